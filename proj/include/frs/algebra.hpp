#pragma once

// Finite-type Cartan data for the simple series A-G: Cartan matrices, root
// lengths, adjacency, and the distinguished long/short bridge pair used by
// the deformed recursion.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace frs {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct AlgebraSpec {
    Family family;
    int rank;
    std::vector<std::vector<int>> cartan;  // cartan[a][b] = C_{a+1,b+1}
    std::vector<int> t;                    // t[a] = t_{a+1} in {1,2,3}
    int t_max;                             // max_alpha t_alpha
    // Bridge pair across the long/short edge (1-based); 0 if simply laced.
    int gamma = 0;        // long end
    int gamma_prime = 0;  // short end

    std::string name() const;
    int C(int a, int b) const { return cartan[a - 1][b - 1]; }  // 1-based
    int t_of(int a) const { return t[a - 1]; }
    bool simply_laced() const { return t_max == 1; }
    bool is_long(int a) const { return t_of(a) == 1; }
    bool is_short(int a) const { return t_of(a) == t_max && t_max > 1; }
    bool adjacent(int a, int b) const { return a != b && C(a, b) != 0; }
    std::vector<int> neighbors(int a) const;
};

// Builds and validates the Cartan data for one of A1..A8, B2..B8, C2..C8,
// D3..D8, E6..E8, F4, G2.  Throws std::invalid_argument for anything else
// (unknown family, rank out of range, or a name that does not parse).
AlgebraSpec build_algebra(const std::string& name);

// Parses "B3"-style names without building; nullopt on malformed input.
std::optional<std::pair<Family, int>> parse_algebra_name(const std::string& name);

// Solves C * w = rhs exactly over the rationals; returns w iff the solution
// is a vector of non-negative integers (the only case enumeration needs).
std::optional<std::vector<long>> cartan_inverse_times(const AlgebraSpec& g,
                                                      const std::vector<long>& rhs);

}  // namespace frs
