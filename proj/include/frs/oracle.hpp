#pragma once

// Independent brute-force multiplicity oracles:
//   * iterated rank-one tensor-product decomposition,
//   * the lattice-path constant-term formula built from the Catalan series,
//   * a character-ring oracle for type A at rank <= 3 (Freudenthal's weight
//     multiplicity recursion plus greedy decomposition of products).
// These are deliberately simple and share no code with the weighted-sum or
// table machinery, so agreement between the two paths is meaningful.

#include <map>
#include <string>
#include <vector>

#include "frs/algebra.hpp"
#include "frs/fermionic.hpp"

namespace frs {

// Weight in the fundamental-weight basis, one entry per node.
using Weight = std::vector<long>;

// Formal non-negative integer combination of weights (a character: weight ->
// multiplicity, no zero entries stored).
using CharacterElement = std::map<Weight, Int>;

// Multiplicity of the irreducible with highest weight l * omega inside
// tensor_i V(i * omega)^{(x) n[i-1]}, by the rank-one tensor rule
// V(a) (x) V(b) = (+)_{c = |a-b|, step 2}^{a+b} V(c).
Int clebsch_gordan_multiplicity(long l, const std::vector<long>& n);

// Same multiplicity as the constant term of
//   prod_i U_i(1/u)^{n[i-1]} * U_1(1/u) * z(u)^{l+1},  z(u) = u * C(u^2),
// with U_i the three-term-recurrence polynomials (U_0 = 1, U_1 = x,
// U_{i+1} = x U_i - U_{i-1}) and C the Catalan series truncated at `order`.
// Throws std::invalid_argument when 2 * order < sum_i i*n[i-1] - l (the
// truncation would then touch the constant term).
Int catalan_residue_multiplicity(long l, const std::vector<long>& n, int order);

// n-th Catalan number (2n)! / (n! (n+1)!).
Int catalan_number(long n);

// Character of the irreducible highest-weight module V(lambda) for type A,
// rank <= 3, via Freudenthal's recursion.  Throws std::invalid_argument for
// other families, larger ranks, or non-dominant lambda.
CharacterElement weyl_character(const AlgebraSpec& g, const Weight& lambda);

// Dimension of V(lambda) by the product formula over positive roots.
Int weyl_dimension(const AlgebraSpec& g, const Weight& lambda);

// Pointwise product of characters (tensor product of the modules).
CharacterElement character_product(const CharacterElement& x, const CharacterElement& y);

// Greedy decomposition of a character into irreducibles: repeatedly strip
// the dominant weight of greatest height.  Returns the multiplicity map.
std::map<Weight, Int> decompose_character(const AlgebraSpec& g, CharacterElement ch);

// Multiplicity of V(mu) inside (x)_f V(factors[f]).
Int tensor_multiplicity(const AlgebraSpec& g, const std::vector<Weight>& factors,
                        const Weight& mu);

// Checks, in the character ring, that
//   prod_{a,i} ch V(i * omega_a)^{n_{a,i}}  ==  sum_lambda N(lambda; n) ch V(lambda)
// where N is the unrestricted weighted sum and lambda runs over the dominant
// weights occurring in the product.  Type A, rank <= 3 only.
bool verify_hkoty_character_identity(const AlgebraSpec& g, int k,
                                     const std::vector<std::vector<long>>& n,
                                     std::string* why = nullptr);

}  // namespace frs
