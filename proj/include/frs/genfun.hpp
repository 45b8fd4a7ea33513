#pragma once

// Windowed evaluation of the grand generating series attached to a weighted
// sum instance:
//   Z = sum_m  prod_a u_a^{q_a} prod_i u_{a,i}^{q_{a,i}} a_i^{Delta_{a,i}}
//              * binom(m_{a,i} + q_{a,i}, m_{a,i}),
// plus exact verification of its factorized rational forms against the
// deformed quadratic table and of its power-series comparison identities.
// All checks are coefficient-by-coefficient on finite exponent boxes of the
// seed variables u_a; rational forms are verified by clearing denominators
// (never by series expansion), with the comparison region shrunk by the
// denominator's exponent span so truncation can not produce false matches.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "frs/deformed.hpp"
#include "frs/fermionic.hpp"

namespace frs {

// Per-node exponent box for the seed variables u_a (inclusive bounds).
struct SeedBox {
    std::vector<long> lo, hi;

    static SeedBox cube(int rank, long lo, long hi);
};

struct ZOptions {
    // Restriction thresholds K: keep only configurations with
    // q_{a,i} >= 0 for all K[a-1] <= i < t_a * k.
    const std::vector<int>* restriction = nullptr;
    // Evaluation applied to the result (level / bookkeeping variables -> 1).
    const PhiSpec* phi = nullptr;
    // Fiber selection: levels above caps[a-1] are frozen to fixed_tail.
    const std::vector<int>* caps = nullptr;
    const Config* fixed_tail = nullptr;
};

// Exact coefficient of prod_a u_a^{target_a}: the finite sum over the fiber
// of configurations with that spin vector, as a Laurent polynomial in the
// level and bookkeeping variables.
LaurentPoly z_coefficient(const SumInstance& inst, const std::vector<long>& target,
                          const ZOptions& opt = {});

// Sum of u^{target} * z_coefficient(target) over every target in the box.
LaurentPoly z_window(const SumInstance& inst, const SeedBox& box, const ZOptions& opt = {});

// Constant term (all seed exponents zero) evaluated at 1: unrestricted gives
// the signed sum, thresholds K = (1,...,1) give the non-negative-vacancy sum.
struct CrossCheckResult {
    Int n_value, m_value;
    bool matches_direct_sums = false;
};
CrossCheckResult constant_term_cross_check(const SumInstance& inst);

// The factorized / split forms of the series that the library can verify.
enum class FactorizationStatement {
    RankOneLevelOne,              // rank 1, k = 1 closed form
    RankOneAllLevels,             // rank 1, any k
    SimplyLacedLevelOneRational,  // k = 1, geometric-series rational form
    SimplyLacedLevelOne,          // k = 1, quadratic-table form
    SimplyLacedAllLevels,         // simply-laced, any k
    GeneralLevelOne,              // any algebra, k = 1
    GeneralAllLevels,             // any algebra, any k
    RankOneSplit,                 // rank 1: split at level j
    SimplyLacedSplit,             // simply-laced: split at level j
    GeneralStep,                  // any algebra: one-step split (j = 1)
    GeneralSplit,                 // any algebra: split at level j
    ShortPartialSplit,            // short-node partial summation (j = 0, p > 0)
    GeneralTailExplicit,          // split at (j, p), tail in explicit table-power form
};

const char* statement_token(FactorizationStatement s);
std::optional<FactorizationStatement> statement_from_token(const std::string& token);
bool statement_is_split(FactorizationStatement s);
// Whether the statement is defined for this algebra / level count / split.
bool statement_applies(FactorizationStatement s, const AlgebraSpec& g, int k, int j, int p);

struct VerifyReport {
    bool ok = true;
    long compared = 0;  // coefficients compared after denominator clearing
    long nonzero = 0;   // nonzero direct-sum coefficients inside the window
    std::string detail;
};

// Verifies the chosen factorized form on the window.  Single-factor forms
// compare the direct windowed sum against the rational right-hand side by
// cross-multiplication.  Split forms fix every outer configuration (total
// entry sum <= fiber_bound) and check that the inner sum equals the
// prefactor times the substituted outer summand, again by
// cross-multiplication per fiber.
VerifyReport verify_factorization(DeformedQTable& table, const SumInstance& inst,
                                  const SeedBox& window, FactorizationStatement st, int j = 0,
                                  int p = 0, int fiber_bound = 2);

// Compares the evaluated, restricted series under thresholds K and K_prime
// (nullptr = unrestricted) coefficient-by-coefficient.  Target exponents run
// over [0, bound] on nodes flagged in ps_nodes and [-bound, bound] elsewhere.
VerifyReport verify_ps_identity(const SumInstance& inst, const std::vector<int>* K,
                                const std::vector<int>* K_prime, const PhiSpec& phi,
                                const std::vector<bool>& ps_nodes, int bound);

}  // namespace frs
