#include "frs/algebra.hpp"

#include "frs/arith.hpp"

#include <cctype>
#include <stdexcept>

namespace frs {

std::string AlgebraSpec::name() const {
    return std::string(1, static_cast<char>(family)) + std::to_string(rank);
}

std::vector<int> AlgebraSpec::neighbors(int a) const {
    std::vector<int> out;
    for (int b = 1; b <= rank; ++b)
        if (adjacent(a, b)) out.push_back(b);
    return out;
}

std::optional<std::pair<Family, int>> parse_algebra_name(const std::string& name) {
    if (name.size() < 2) return std::nullopt;
    char f = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    if (f < 'A' || f > 'G') return std::nullopt;
    for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    int r = std::stoi(name.substr(1));
    return std::pair{static_cast<Family>(f), r};
}

namespace {

void validate(const AlgebraSpec& g) {
    const int r = g.rank;
    for (int a = 1; a <= r; ++a) {
        if (g.C(a, a) != 2) throw std::logic_error("cartan diagonal");
        for (int b = 1; b <= r; ++b) {
            if (a != b && g.C(a, b) > 0) throw std::logic_error("cartan sign");
            if ((g.C(a, b) == 0) != (g.C(b, a) == 0)) throw std::logic_error("cartan symmetry");
            // Symmetrizability: C_{ab}/t_a == C_{ba}/t_b.
            if (g.C(a, b) * g.t_of(b) != g.C(b, a) * g.t_of(a))
                throw std::logic_error("cartan symmetrizer");
        }
    }
    if (g.gamma != 0) {
        if (!g.adjacent(g.gamma, g.gamma_prime)) throw std::logic_error("bridge adjacency");
        if (g.C(g.gamma, g.gamma_prime) != -1) throw std::logic_error("bridge normalization");
        if (!g.is_long(g.gamma) || !g.is_short(g.gamma_prime))
            throw std::logic_error("bridge lengths");
    }
}

std::vector<std::vector<int>> chain(int r) {
    std::vector<std::vector<int>> c(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i) {
        c[i][i] = 2;
        if (i + 1 < r) c[i][i + 1] = c[i + 1][i] = -1;
    }
    return c;
}

}  // namespace

AlgebraSpec build_algebra(const std::string& name) {
    auto parsed = parse_algebra_name(name);
    if (!parsed) throw std::invalid_argument("unrecognized algebra name: " + name);
    auto [family, r] = *parsed;

    auto range_error = [&] {
        return std::invalid_argument("unsupported rank for " + name);
    };

    AlgebraSpec g;
    g.family = family;
    g.rank = r;
    switch (family) {
        case Family::A:
            if (r < 1 || r > 8) throw range_error();
            g.cartan = chain(r);
            g.t.assign(r, 1);
            break;
        case Family::B:
            // Long chain 1..r-1, short root r; double edge C_{r,r-1} = -2.
            if (r < 2 || r > 8) throw range_error();
            g.cartan = chain(r);
            g.cartan[r - 1][r - 2] = -2;
            g.t.assign(r, 1);
            g.t[r - 1] = 2;
            g.gamma = r - 1;
            g.gamma_prime = r;
            break;
        case Family::C:
            // Short chain 1..r-1, long root r; double edge C_{r-1,r} = -2.
            if (r < 2 || r > 8) throw range_error();
            g.cartan = chain(r);
            g.cartan[r - 2][r - 1] = -2;
            g.t.assign(r, 2);
            g.t[r - 1] = 1;
            g.gamma = r;
            g.gamma_prime = r - 1;
            break;
        case Family::D:
            // Chain 1..r-2 with both r-1 and r attached to r-2 (D3 = A3).
            if (r < 3 || r > 8) throw range_error();
            g.cartan = chain(r);
            g.cartan[r - 2][r - 1] = g.cartan[r - 1][r - 2] = 0;
            g.cartan[r - 3][r - 1] = g.cartan[r - 1][r - 3] = -1;
            g.t.assign(r, 1);
            break;
        case Family::E:
            // Chain 1-3-4-...-r with node 2 attached to node 4.
            if (r < 6 || r > 8) throw range_error();
            g.cartan.assign(r, std::vector<int>(r, 0));
            for (int i = 1; i <= r; ++i) g.cartan[i - 1][i - 1] = 2;
            {
                auto link = [&](int a, int b) {
                    g.cartan[a - 1][b - 1] = g.cartan[b - 1][a - 1] = -1;
                };
                link(1, 3);
                link(2, 4);
                for (int i = 3; i < r; ++i) link(i, i + 1);
            }
            g.t.assign(r, 1);
            break;
        case Family::F:
            // Long 1,2; short 3,4; double edge C_{3,2} = -2.
            if (r != 4) throw range_error();
            g.cartan = chain(4);
            g.cartan[2][1] = -2;
            g.t = {1, 1, 2, 2};
            g.gamma = 2;
            g.gamma_prime = 3;
            break;
        case Family::G:
            if (r != 2) throw range_error();
            g.cartan = {{2, -1}, {-3, 2}};
            g.t = {1, 3};
            g.gamma = 1;
            g.gamma_prime = 2;
            break;
    }
    g.t_max = 1;
    for (int t : g.t) g.t_max = std::max(g.t_max, t);
    validate(g);
    return g;
}

std::optional<std::vector<long>> cartan_inverse_times(const AlgebraSpec& g,
                                                      const std::vector<long>& rhs) {
    const int r = g.rank;
    if (static_cast<int>(rhs.size()) != r)
        throw std::invalid_argument("cartan_inverse_times: size mismatch");
    // Exact Gaussian elimination over the rationals.
    std::vector<std::vector<Rat>> m(r, std::vector<Rat>(r + 1));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) m[i][j] = g.cartan[i][j];
        m[i][r] = rhs[i];
    }
    for (int col = 0; col < r; ++col) {
        int piv = -1;
        for (int i = col; i < r; ++i)
            if (m[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw std::logic_error("singular Cartan matrix");
        std::swap(m[col], m[piv]);
        for (int i = 0; i < r; ++i) {
            if (i == col || m[i][col] == 0) continue;
            Rat f = m[i][col] / m[col][col];
            for (int j = col; j <= r; ++j) m[i][j] -= f * m[col][j];
        }
    }
    std::vector<long> w(r);
    for (int i = 0; i < r; ++i) {
        Rat x = m[i][r] / m[i][i];
        x.canonicalize();
        if (x.get_den() != 1 || x < 0) return std::nullopt;
        if (!x.get_num().fits_slong_p()) throw std::overflow_error("cartan_inverse_times");
        w[i] = x.get_num().get_si();
    }
    return w;
}

}  // namespace frs
