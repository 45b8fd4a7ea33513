#pragma once

// Weighted binomial sums over non-negative integer configurations attached
// to a root system: vacancy data, configuration enumeration with a fixed
// grading target, and the restricted (M) / unrestricted (N) sums.

#include <functional>
#include <string>
#include <vector>

#include "frs/algebra.hpp"
#include "frs/arith.hpp"

namespace frs {

// A configuration assigns a non-negative integer m[a-1][i-1] to each pair
// (node a, level i) with 1 <= i <= t_a * k; the same shape holds the fixed
// multiplicities n.
using Config = std::vector<std::vector<long>>;

struct SumInstance {
    AlgebraSpec g;
    int k = 1;
    std::vector<long> lambda;  // size rank, entries >= 0
    Config n;                  // n[a-1] has length t_a * k, entries >= 0

    int levels(int a) const { return g.t_of(a) * k; }
    Config zero_config() const;
    void validate() const;  // throws std::invalid_argument on shape errors
};

// Generalized level count for node a at level i of configuration c; indices
// outside the stored range count as zero.
long entry(const Config& c, int a, int i);

// Total spin of node a:  l_a + sum_{b,j} j * C_{a,b} * m[b][j] - sum_j j * n[a][j].
long node_spin(const SumInstance& inst, const Config& m, int a);

// Vacancy  p_{a,i} = sum_j min(i,j) n[a][j]
//                    - sum_{b,j} sgn(C_{a,b}) min(|C_{a,b}| j, |C_{b,a}| i) m[b][j].
long vacancy_p(const SumInstance& inst, const Config& m, int a, int i);

// Shifted vacancy, defined for every i >= 0 (i = 0 gives node_spin):
//   q_{a,i} = l_a + sum_{b,j : |C_{a,b}| j > |C_{b,a}| i}
//                       sgn(C_{a,b}) (|C_{a,b}| j - |C_{b,a}| i) m[b][j]
//             - sum_{j > i} (j - i) n[a][j].
long vacancy_q(const SumInstance& inst, const Config& m, int a, int i);

// Exponent carried by the bookkeeping variable a_i on node a at level i:
// ((-i) mod t_{gamma'}) * m[a][i] on the short bridge node, 0 elsewhere.
long delta_exponent(const SumInstance& inst, const Config& m, int a, int i);

struct VacancyData {
    std::vector<long> spin;          // q_a per node
    std::vector<std::vector<long>> p;      // p[a-1][i-1]
    std::vector<std::vector<long>> q;      // q[a-1][i-1]
    std::vector<std::vector<long>> delta;  // delta[a-1][i-1]
};

VacancyData compute_vacancy_data(const SumInstance& inst, const Config& m);

// Closed-form q_{a,i} written out per family (independent derivation used to
// cross-check vacancy_q); valid for non-simply-laced families and for the
// uniform simply-laced expression.
long explicit_vacancy_q(const SumInstance& inst, const Config& m, int a, int i);

// Checks, for one configuration: q_{a,i} == p_{a,i} + q_a on the index set,
// q_{a, t_a k} == lambda_a, vacancy_q == explicit_vacancy_q everywhere, and
// the three-term level recurrences tying q_{a,j-1} to q_{a,j}, q_{a,j+1}.
// Returns true on success; on failure fills `why` if non-null.
bool verify_q_recurrences(const SumInstance& inst, const Config& m, std::string* why = nullptr);

// Enumerates every configuration m with node_spin(m) == target.
//   max_part[a-1] caps the levels that are enumerated at node a (levels above
//   the cap are taken from fixed_tail, or zero if it is null).
// The callback receives each configuration; enumeration order is
// deterministic.  Returns the number of configurations visited.
long enumerate_configs(const SumInstance& inst, const std::vector<long>& target,
                       const std::vector<int>& max_part, const Config* fixed_tail,
                       const std::function<void(const Config&)>& cb);

// Convenience: all configurations with zero spin at every node.
long enumerate_zero_spin_configs(const SumInstance& inst,
                                 const std::function<void(const Config&)>& cb);

// Restricted sum: zero-spin configurations with every vacancy p_{a,i} >= 0,
// weighted by prod binom(m + p, m).
Int m_sum(const SumInstance& inst);

// Unrestricted sum: same weight, signed binomials, no vacancy condition.
Int n_sum(const SumInstance& inst);

}  // namespace frs
