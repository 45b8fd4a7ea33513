#include "frs/oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "frs/arith.hpp"

namespace frs {

Int clebsch_gordan_multiplicity(long l, const std::vector<long>& n) {
    if (l < 0) throw std::invalid_argument("clebsch_gordan_multiplicity: negative weight");
    std::map<long, Int> reps{{0, Int(1)}};
    for (std::size_t idx = 0; idx < n.size(); ++idx) {
        const long i = static_cast<long>(idx) + 1;
        for (long rep = 0; rep < n[idx]; ++rep) {
            std::map<long, Int> next;
            for (const auto& [a, mult] : reps)
                for (long c = std::abs(a - i); c <= a + i; c += 2) next[c] += mult;
            reps = std::move(next);
        }
    }
    auto it = reps.find(l);
    return it == reps.end() ? Int(0) : it->second;
}

Int catalan_number(long n) {
    Int num, d1, d2;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(2 * n));
    mpz_fac_ui(d1.get_mpz_t(), static_cast<unsigned long>(n));
    mpz_fac_ui(d2.get_mpz_t(), static_cast<unsigned long>(n + 1));
    return num / (d1 * d2);
}

Int catalan_residue_multiplicity(long l, const std::vector<long>& n, int order) {
    long weight = 0;
    for (std::size_t idx = 0; idx < n.size(); ++idx)
        weight += (static_cast<long>(idx) + 1) * n[idx];
    if (2L * order < weight - l) {
        std::ostringstream os;
        os << "catalan_residue_multiplicity: order " << order << " too small, need at least "
           << (weight - l + 1) / 2;
        throw std::invalid_argument(os.str());
    }
    const VariableId u = var_u(1);
    const LaurentPoly x = LaurentPoly::variable(u, -1);

    // three-term-recurrence polynomials evaluated at 1/u
    std::vector<LaurentPoly> U{LaurentPoly::one(), x};
    for (std::size_t i = 2; i <= std::max<std::size_t>(n.size(), 1); ++i)
        U.push_back(x * U[i - 1] - U[i - 2]);

    LaurentPoly z;
    for (long m = 0; m <= order; ++m)
        z.add_term(Monomial::single(u, 2 * m + 1), catalan_number(m));

    LaurentPoly prod = U[1];
    for (std::size_t idx = 0; idx < n.size(); ++idx)
        for (long rep = 0; rep < n[idx]; ++rep) prod *= U[idx + 1];
    prod *= z.pow(l + 1);
    return prod.coefficient(Monomial::one());
}

// ---------------------------------------------------------------------------
// Type A character ring (rank <= 3)
// ---------------------------------------------------------------------------

namespace {

void require_type_a(const AlgebraSpec& g) {
    if (g.family != Family::A || g.rank > 3)
        throw std::invalid_argument("character oracle: type A at rank <= 3 only");
}

void require_dominant(const AlgebraSpec& g, const Weight& w) {
    if (w.size() != static_cast<std::size_t>(g.rank))
        throw std::invalid_argument("character oracle: weight size mismatch");
    for (long c : w)
        if (c < 0) throw std::invalid_argument("character oracle: non-dominant weight");
}

// Scaled pairing (rank+1) * (x, y) in the normalization where every root has
// squared length 2; scaling cancels in every ratio the oracle forms.
Int scaled_dot(int r, const Weight& x, const Weight& y) {
    Int out = 0;
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j)
            out += Int(x[i - 1]) * Int(y[j - 1]) * (std::min(i, j) * (r + 1 - std::max(i, j)));
    return out;
}

Int scaled_height(int r, const Weight& w) {
    Weight rho(static_cast<std::size_t>(r), 1);
    return scaled_dot(r, rho, w);
}

std::vector<Weight> positive_roots(const AlgebraSpec& g) {
    std::vector<Weight> roots;
    for (int i = 1; i <= g.rank; ++i)
        for (int j = i; j <= g.rank; ++j) {
            Weight w(static_cast<std::size_t>(g.rank), 0);
            for (int s = i; s <= j; ++s)
                for (int b = 1; b <= g.rank; ++b) w[b - 1] += g.C(s, b);
            roots.push_back(std::move(w));
        }
    return roots;
}

Weight add(const Weight& x, const Weight& y, long scale = 1) {
    Weight out(x);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * y[i];
    return out;
}

Weight simple_root(const AlgebraSpec& g, int a) {
    Weight w(static_cast<std::size_t>(g.rank));
    for (int b = 1; b <= g.rank; ++b) w[b - 1] = g.C(a, b);
    return w;
}

}  // namespace

Int weyl_dimension(const AlgebraSpec& g, const Weight& lambda) {
    require_type_a(g);
    require_dominant(g, lambda);
    const Weight rho(static_cast<std::size_t>(g.rank), 1);
    Int num(1), den(1);
    for (const Weight& a : positive_roots(g)) {
        num *= scaled_dot(g.rank, add(lambda, rho), a);
        den *= scaled_dot(g.rank, rho, a);
    }
    return num / den;
}

CharacterElement weyl_character(const AlgebraSpec& g, const Weight& lambda) {
    require_type_a(g);
    require_dominant(g, lambda);
    const int r = g.rank;
    const Weight rho(static_cast<std::size_t>(r), 1);
    const std::vector<Weight> pos = positive_roots(g);
    const Int top_norm = scaled_dot(r, add(lambda, rho), add(lambda, rho));

    CharacterElement mult{{lambda, Int(1)}};
    std::set<Weight> level{lambda};
    while (!level.empty()) {
        std::set<Weight> next;
        for (const Weight& w : level)
            for (int a = 1; a <= r; ++a) next.insert(add(w, simple_root(g, a), -1));
        level.clear();
        for (const Weight& mu : next) {
            if (mult.count(mu)) continue;
            Int num = 0;
            for (const Weight& alpha : pos)
                for (long k = 1;; ++k) {
                    auto it = mult.find(add(mu, alpha, k));
                    if (it == mult.end()) break;
                    num += it->second * scaled_dot(r, add(mu, alpha, k), alpha);
                }
            if (num == 0) continue;
            Int den = top_norm - scaled_dot(r, add(mu, rho), add(mu, rho));
            Int m = 2 * num / den;
            if (m != 0) {
                mult.emplace(mu, m);
                level.insert(mu);
            }
        }
    }

    Int total = 0;
    for (const auto& [w, m] : mult) total += m;
    if (total != weyl_dimension(g, lambda))
        throw std::logic_error("weyl_character: dimension check failed");
    return mult;
}

CharacterElement character_product(const CharacterElement& x, const CharacterElement& y) {
    CharacterElement out;
    for (const auto& [wx, mx] : x)
        for (const auto& [wy, my] : y) {
            Weight w = add(wx, wy);
            Int& c = out[w];
            c += mx * my;
            if (c == 0) out.erase(w);
        }
    return out;
}

std::map<Weight, Int> decompose_character(const AlgebraSpec& g, CharacterElement ch) {
    require_type_a(g);
    std::map<Weight, Int> out;
    while (!ch.empty()) {
        const Weight* best = nullptr;
        Int best_height;
        for (const auto& [w, m] : ch) {
            if (std::any_of(w.begin(), w.end(), [](long c) { return c < 0; })) continue;
            Int h = scaled_height(g.rank, w);
            if (!best || h > best_height || (h == best_height && w > *best)) {
                best = &w;
                best_height = h;
            }
        }
        if (!best) throw std::invalid_argument("decompose_character: not a genuine character");
        Weight top = *best;
        Int mult = ch.at(top);
        if (mult < 0) throw std::invalid_argument("decompose_character: negative multiplicity");
        out.emplace(top, mult);
        for (const auto& [w, m] : weyl_character(g, top)) {
            Int& c = ch[w];
            c -= mult * m;
            if (c == 0) ch.erase(w);
        }
    }
    return out;
}

Int tensor_multiplicity(const AlgebraSpec& g, const std::vector<Weight>& factors,
                        const Weight& mu) {
    require_type_a(g);
    require_dominant(g, mu);
    CharacterElement prod{{Weight(static_cast<std::size_t>(g.rank), 0), Int(1)}};
    for (const Weight& f : factors) prod = character_product(prod, weyl_character(g, f));
    auto dec = decompose_character(g, prod);
    auto it = dec.find(mu);
    return it == dec.end() ? Int(0) : it->second;
}

bool verify_hkoty_character_identity(const AlgebraSpec& g, int k,
                                     const std::vector<std::vector<long>>& n, std::string* why) {
    require_type_a(g);
    // The weighted sum runs over level-bounded configurations; levels above
    // twice the total content of n can never be occupied at rank <= 3, so
    // padding the instance there makes the bound non-binding.
    long content = 0;
    for (int a = 1; a <= g.rank; ++a)
        for (int i = 1; i <= k; ++i) content += i * entry(n, a, i);
    const int k_eff = std::max<long>(k, 2 * content);
    std::vector<std::vector<long>> n_pad(static_cast<std::size_t>(g.rank));
    for (int a = 1; a <= g.rank; ++a) {
        n_pad[a - 1].assign(static_cast<std::size_t>(k_eff), 0);
        for (int i = 1; i <= k; ++i) n_pad[a - 1][i - 1] = entry(n, a, i);
    }

    CharacterElement prod{{Weight(static_cast<std::size_t>(g.rank), 0), Int(1)}};
    for (int a = 1; a <= g.rank; ++a)
        for (int i = 1; i <= k; ++i)
            for (long rep = 0; rep < entry(n, a, i); ++rep) {
                Weight w(static_cast<std::size_t>(g.rank), 0);
                w[a - 1] = i;
                prod = character_product(prod, weyl_character(g, w));
            }

    std::set<Weight> candidates;
    for (const auto& [w, m] : prod)
        if (std::all_of(w.begin(), w.end(), [](long c) { return c >= 0; })) candidates.insert(w);
    std::map<Weight, Int> dec = decompose_character(g, prod);

    for (const Weight& lambda : candidates) {
        Int expected = 0;
        auto it = dec.find(lambda);
        if (it != dec.end()) expected = it->second;
        SumInstance inst{g, k_eff, lambda, n_pad};
        Int got = n_sum(inst);
        if (got != expected) {
            if (why) {
                std::ostringstream os;
                os << "multiplicity mismatch at highest weight (";
                for (std::size_t i = 0; i < lambda.size(); ++i)
                    os << (i ? "," : "") << lambda[i];
                os << "): character ring gives " << expected << ", weighted sum gives " << got;
                *why = os.str();
            }
            return false;
        }
    }
    return true;
}

}  // namespace frs
