#pragma once

// Deformed version of the quadratic table: entries are rational functions
// in the seed variables u_a (one per node), the level variables u_{a,i}, and
// the bookkeeping variables a_i that track the short/long interleaving:
//   D_{a,0} = 1,   D_{a,1} = u_a^{-1},
//   D_{a,i+1} = (D_{a,i}^2 - prod_{b ~ a} E_i(a,b)) / (u_{a,i} * D_{a,i-1}),
// where the edge term across (a,b) is
//   E_i(a,b) = a_i^{e} * prod_{c=0}^{|C_ab|-1} D_{b, floor((t_b i + c)/t_a)},
//   e = (-i mod t_a) if t_a > t_b, else 0.
// The module also provides the level-shift substitutions under which the
// table is self-similar and the evaluation maps that specialize it to the
// classical table.

#include <map>
#include <set>
#include <utility>

#include "frs/algebra.hpp"
#include "frs/arith.hpp"
#include "frs/qsystem.hpp"

namespace frs {

class DeformedQTable {
  public:
    explicit DeformedQTable(AlgebraSpec g) : g_(std::move(g)) {}

    const AlgebraSpec& algebra() const { return g_; }

    // D_{a,i}; built on demand.
    const RationalFunction& entry(int a, int i);

    // Same entry in factored form.  The recursion is carried out in the
    // factored arithmetic of `ring()`: each new level contributes one new
    // atom while everything else cancels by exact division, which keeps the
    // build polynomial-sized where plain rational arithmetic blows up.
    const FactorRing::Value& entry_factored(int a, int i);
    FactorRing& ring() { return ring_; }

    // Edge term E_i(a,b) by the uniform formula above.
    RationalFunction edge_term(int a, int b, int i);
    // Edge term from the per-family explicit catalog (cross-check).
    RationalFunction edge_term_explicit(int a, int b, int i);
    // Uniform formula vs. catalog, compared in factored form (cheap even
    // when the expanded entries are large).
    bool edge_catalog_matches(int a, int b, int i);

  private:
    FactorRing::Value edge_value(int a, int b, int i);
    FactorRing::Value edge_value_explicit(int a, int b, int i);
    FactorRing::Value mono_value(const VariableId& v, std::int64_t e) const;

    AlgebraSpec g_;
    FactorRing ring_;
    std::map<std::pair<int, int>, FactorRing::Value> fact_;
    std::map<std::pair<int, int>, RationalFunction> table_;
    std::set<std::pair<int, int>> in_progress_;
};

// ---------------------------------------------------------------------------
// Level-shift substitution (j, p), 0 <= p < t_max (p only affects short
// nodes).  Images of the seed variables:
//   u_a        -> 1 / D_{a, t_a j + 1}
//   u_{a,1}    -> D_{a, t_a j} * u_{a, t_a j + 1}
//   u_{a,l}    -> u_{a, l + t_a j}            (l > 1)
//   a_i        -> D_{gamma, j}^{[i < t_gamma']} * a_{i + j t_gamma'}
// and, when p > 0, on short nodes b the two levels around p are re-seeded:
//   u_{b,p}    -> 1 / D_{b, t_b j + p + 1}
//   u_{b,p+1}  -> D_{b, t_b j + p} * u_{b, t_b j + p + 1}.
// j = p = 0 is the identity.
// ---------------------------------------------------------------------------

class ShiftSubstitution {
  public:
    ShiftSubstitution(DeformedQTable& table, int j, int p);

    // Image of a variable, nullptr when it is left alone.  Cached; the
    // returned pointer stays valid while the object lives.
    const RationalFunction* image(const VariableId& v) const;

    RationalFunction apply(const LaurentPoly& poly) const;
    RationalFunction apply(const RationalFunction& rf) const;

  private:
    DeformedQTable& table_;
    int j_, p_;
    mutable std::map<VariableId, RationalFunction> cache_;
};

RationalFunction shift_substitution(DeformedQTable& table, int j, int p,
                                    const LaurentPoly& poly);

// Self-similarity of the table under the pure level shift:
//   D_{a, i + t_a j}(u)  ==  D_{a,i}(u^{(j)})
// for every node a and 1 <= i <= t_a * (scaled_depth - j), so every entry
// touched lies within scaled_depth rescaled levels.  Returns true iff every
// comparison holds.
bool verify_shift_recursion(DeformedQTable& table, int j, int scaled_depth,
                            std::string* why = nullptr);

// Rebuilds the table from its first t_a + 1 levels per node using only the
// one-step shift, and compares with the quadratic recursion entrywise up to
// D_{a, t_a * scaled_depth}.  Independent consistency check of the table.
bool verify_shift_rebuild(const AlgebraSpec& g, int scaled_depth, std::string* why = nullptr);

// ---------------------------------------------------------------------------
// Evaluation maps.  phi(j, p) sets to 1:
//   a_i      for i <= t_gamma' j + p,
//   u_{a,i}  for i <  t_a j                      (p == 0),
//   u_{a,i}  for i <= j on long nodes and i < t_a j + p on short nodes
//                                                 (p > 0).
// The full evaluation sets every u_{a,i} and a_i to 1.
// ---------------------------------------------------------------------------

struct PhiSpec {
    int j = 0;
    int p = 0;
    bool full = false;  // when set, j/p are ignored

    bool kills(const AlgebraSpec& g, const VariableId& v) const;
};

LaurentPoly evaluate_phi(const AlgebraSpec& g, const PhiSpec& phi, const LaurentPoly& poly);
// Rational version; throws if the denominator collapses to zero (it cannot
// for table entries).
RationalFunction evaluate_phi(const AlgebraSpec& g, const PhiSpec& phi,
                              const RationalFunction& rf);

// Classical table entry rewritten in the u seeds (t_a -> 1/u_a).
LaurentPoly classical_entry_in_u(QSystemTable& classical, int a, int j);

// phi(j,p) collapses the deformed table onto the classical one:
//   phi(D_{a,i}) == Q_{a,i}|_{t->1/u}          for i <= tau_a (+1 on long
//                                              nodes when p > 0),
//   phi(D_{a,tau_a+1}) == Q_{a,tau_a+1}|_{t->1/u} * u_{a,tau_a}^{-1}
// with tau_a = t_a j (p == 0) or t_a j + p on short nodes (p > 0).
bool verify_phi_collapse(DeformedQTable& table, QSystemTable& classical, int j, int p,
                         std::string* why = nullptr);

}  // namespace frs
