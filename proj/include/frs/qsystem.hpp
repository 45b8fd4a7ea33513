#pragma once

// Classical quadratic recursion attached to a Cartan matrix: a table of
// polynomials Q_{a,j} in the seed variables t_a with
//   Q_{a,0} = 1,  Q_{a,1} = t_a,
//   Q_{a,j+1} = (Q_{a,j}^2 - prod_{b ~ a} E_j(a,b)) / Q_{a,j-1},
// where the edge term across (a,b) interleaves the neighbor's levels:
//   E_j(a,b) = prod_{c=0}^{|C_ab|-1} Q_{b, floor((|C_ba| j + c)/|C_ab|)}.
// Every division is exact in the polynomial ring; the table is built on
// demand with memoization (entries at different scaled levels depend on each
// other across a multiple edge, so no fixed sweep order works).

#include <map>
#include <set>
#include <utility>

#include "frs/algebra.hpp"
#include "frs/arith.hpp"

namespace frs {

class QSystemTable {
  public:
    explicit QSystemTable(AlgebraSpec g) : g_(std::move(g)) {}

    const AlgebraSpec& algebra() const { return g_; }

    // Q_{a,j}; computes dependencies on demand.  Throws std::logic_error if
    // an exact division ever fails (it never does for valid Cartan data).
    const LaurentPoly& entry(int a, int j);

    // Edge term E_j(a,b) by the interleaving formula.
    LaurentPoly t_term(int a, int b, int j);

    // Edge term read from the per-family explicit catalog (doubled and
    // tripled edges written out case by case); throws if (a,b) is not an
    // edge.  Used as an independent cross-check of t_term.
    LaurentPoly t_term_explicit(int a, int b, int j);

    // Computes all entries with j <= t_a * level.
    void ensure_scaled_level(int level);

  private:
    AlgebraSpec g_;
    std::map<std::pair<int, int>, LaurentPoly> table_;
    std::set<std::pair<int, int>> in_progress_;
};

QSystemTable solve_q_system(const AlgebraSpec& g, int scaled_level);

// Rank-1 closed form: the three-term family with P_0 = 1, P_1 = t,
// t * P_j = P_{j-1} + P_{j+1}.
LaurentPoly rank1_three_term(int j);

// Checks that the rank-1 table coincides with the three-term family up to
// the given depth.
bool chebyshev_check(int depth);

}  // namespace frs
