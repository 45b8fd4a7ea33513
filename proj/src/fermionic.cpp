#include "frs/fermionic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace frs {

namespace {
int sgn(int x) { return (x > 0) - (x < 0); }
}  // namespace

Config SumInstance::zero_config() const {
    Config c(g.rank);
    for (int a = 1; a <= g.rank; ++a) c[a - 1].assign(levels(a), 0);
    return c;
}

void SumInstance::validate() const {
    if (k < 1) throw std::invalid_argument("instance: k must be >= 1");
    if (static_cast<int>(lambda.size()) != g.rank)
        throw std::invalid_argument("instance: lambda size mismatch");
    for (long l : lambda)
        if (l < 0) throw std::invalid_argument("instance: negative lambda entry");
    if (static_cast<int>(n.size()) != g.rank)
        throw std::invalid_argument("instance: n row count mismatch");
    for (int a = 1; a <= g.rank; ++a) {
        if (static_cast<int>(n[a - 1].size()) != levels(a))
            throw std::invalid_argument("instance: n row length mismatch at node " +
                                        std::to_string(a));
        for (long v : n[a - 1])
            if (v < 0) throw std::invalid_argument("instance: negative n entry");
    }
}

long entry(const Config& c, int a, int i) {
    if (a < 1 || a > static_cast<int>(c.size())) return 0;
    if (i < 1 || i > static_cast<int>(c[a - 1].size())) return 0;
    return c[a - 1][i - 1];
}

long node_spin(const SumInstance& inst, const Config& m, int a) {
    long s = inst.lambda[a - 1];
    for (int b = 1; b <= inst.g.rank; ++b) {
        int c = inst.g.C(a, b);
        if (c == 0) continue;
        for (int j = 1; j <= inst.levels(b); ++j) s += static_cast<long>(j) * c * entry(m, b, j);
    }
    for (int j = 1; j <= inst.levels(a); ++j) s -= static_cast<long>(j) * entry(inst.n, a, j);
    return s;
}

long vacancy_p(const SumInstance& inst, const Config& m, int a, int i) {
    long p = 0;
    for (int j = 1; j <= inst.levels(a); ++j)
        p += static_cast<long>(std::min(i, j)) * entry(inst.n, a, j);
    for (int b = 1; b <= inst.g.rank; ++b) {
        int c = inst.g.C(a, b);
        if (c == 0) continue;
        long cab = std::abs(c), cba = std::abs(inst.g.C(b, a));
        for (int j = 1; j <= inst.levels(b); ++j)
            p -= sgn(c) * std::min(cab * j, cba * i) * entry(m, b, j);
    }
    return p;
}

long vacancy_q(const SumInstance& inst, const Config& m, int a, int i) {
    long q = inst.lambda[a - 1];
    for (int b = 1; b <= inst.g.rank; ++b) {
        int c = inst.g.C(a, b);
        if (c == 0) continue;
        long cab = std::abs(c), cba = std::abs(inst.g.C(b, a));
        for (int j = 1; j <= inst.levels(b); ++j)
            if (cab * j > cba * i) q += sgn(c) * (cab * j - cba * i) * entry(m, b, j);
    }
    for (int j = i + 1; j <= inst.levels(a); ++j)
        q -= static_cast<long>(j - i) * entry(inst.n, a, j);
    return q;
}

long delta_exponent(const SumInstance& inst, const Config& m, int a, int i) {
    if (a != inst.g.gamma_prime) return 0;
    long t = inst.g.t_of(inst.g.gamma_prime);
    long e = ((-(static_cast<long>(i))) % t + t) % t;
    return e * entry(m, a, i);
}

VacancyData compute_vacancy_data(const SumInstance& inst, const Config& m) {
    VacancyData vd;
    const int r = inst.g.rank;
    vd.spin.resize(r);
    vd.p.resize(r);
    vd.q.resize(r);
    vd.delta.resize(r);
    for (int a = 1; a <= r; ++a) {
        vd.spin[a - 1] = node_spin(inst, m, a);
        int T = inst.levels(a);
        vd.p[a - 1].resize(T);
        vd.q[a - 1].resize(T);
        vd.delta[a - 1].resize(T);
        for (int i = 1; i <= T; ++i) {
            vd.p[a - 1][i - 1] = vacancy_p(inst, m, a, i);
            vd.q[a - 1][i - 1] = vacancy_q(inst, m, a, i);
            vd.delta[a - 1][i - 1] = delta_exponent(inst, m, a, i);
        }
    }
    return vd;
}

// ---------------------------------------------------------------------------
// Closed forms, one family at a time.
// ---------------------------------------------------------------------------

long explicit_vacancy_q(const SumInstance& inst, const Config& m, int a, int i) {
    const AlgebraSpec& g = inst.g;
    const Config& n = inst.n;
    const int r = g.rank;
    const int k = inst.k;
    long q = inst.lambda[a - 1];

    auto own = [&](int node, int j) { return 2 * entry(m, node, j) - entry(n, node, j); };

    if (g.simply_laced()) {
        for (int j = i + 1; j <= k; ++j) {
            long s = own(a, j);
            for (int b : g.neighbors(a)) s -= entry(m, b, j);
            q += static_cast<long>(j - i) * s;
        }
        return q;
    }

    switch (g.family) {
        case Family::B: {
            if (a <= r - 2) {
                for (int j = i + 1; j <= k; ++j)
                    q += static_cast<long>(j - i) *
                         (own(a, j) - entry(m, a - 1, j) - entry(m, a + 1, j));
            } else if (a == r - 1) {
                for (int j = i + 1; j <= k; ++j)
                    q += static_cast<long>(j - i) * (own(a, j) - entry(m, r - 2, j));
                for (int j = 2 * i + 1; j <= 2 * k; ++j)
                    q -= static_cast<long>(j - 2 * i) * entry(m, r, j);
            } else {  // a == r
                for (int j = i + 1; j <= 2 * k; ++j) q += static_cast<long>(j - i) * own(a, j);
                for (int j = 1; j <= k; ++j)
                    if (2 * j > i) q -= static_cast<long>(2 * j - i) * entry(m, r - 1, j);
            }
            return q;
        }
        case Family::C: {
            if (a <= r - 2) {
                for (int j = i + 1; j <= 2 * k; ++j)
                    q += static_cast<long>(j - i) *
                         (own(a, j) - entry(m, a - 1, j) - entry(m, a + 1, j));
            } else if (a == r - 1) {
                for (int j = i + 1; j <= 2 * k; ++j)
                    q += static_cast<long>(j - i) * (own(a, j) - entry(m, r - 2, j));
                for (int j = 1; j <= k; ++j)
                    if (2 * j > i) q -= static_cast<long>(2 * j - i) * entry(m, r, j);
            } else {  // a == r
                for (int j = i + 1; j <= k; ++j) q += static_cast<long>(j - i) * own(a, j);
                for (int j = 2 * i + 1; j <= 2 * k; ++j)
                    q -= static_cast<long>(j - 2 * i) * entry(m, r - 1, j);
            }
            return q;
        }
        case Family::F: {
            if (a == 1) {
                for (int j = i + 1; j <= k; ++j)
                    q += static_cast<long>(j - i) * (own(1, j) - entry(m, 2, j));
            } else if (a == 2) {
                for (int j = i + 1; j <= k; ++j)
                    q += static_cast<long>(j - i) * (own(2, j) - entry(m, 1, j));
                for (int j = 2 * i + 1; j <= 2 * k; ++j)
                    q -= static_cast<long>(j - 2 * i) * entry(m, 3, j);
            } else if (a == 3) {
                for (int j = i + 1; j <= 2 * k; ++j)
                    q += static_cast<long>(j - i) * (own(3, j) - entry(m, 4, j));
                for (int j = 1; j <= k; ++j)
                    if (2 * j > i) q -= static_cast<long>(2 * j - i) * entry(m, 2, j);
            } else {  // a == 4
                for (int j = i + 1; j <= 2 * k; ++j)
                    q += static_cast<long>(j - i) * (own(4, j) - entry(m, 3, j));
            }
            return q;
        }
        case Family::G: {
            if (a == 1) {
                for (int j = i + 1; j <= k; ++j) q += static_cast<long>(j - i) * own(1, j);
                for (int j = 3 * i + 1; j <= 3 * k; ++j)
                    q -= static_cast<long>(j - 3 * i) * entry(m, 2, j);
            } else {  // a == 2
                for (int j = i + 1; j <= 3 * k; ++j) q += static_cast<long>(j - i) * own(2, j);
                for (int j = 1; j <= k; ++j)
                    if (3 * j > i) q -= static_cast<long>(3 * j - i) * entry(m, 1, j);
            }
            return q;
        }
        default:
            throw std::logic_error("explicit_vacancy_q: unexpected family");
    }
}

// ---------------------------------------------------------------------------
// verify_q_recurrences
// ---------------------------------------------------------------------------

bool verify_q_recurrences(const SumInstance& inst, const Config& m, std::string* why) {
    const AlgebraSpec& g = inst.g;
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    auto q_of = [&](int a, int i) { return vacancy_q(inst, m, a, i); };

    for (int a = 1; a <= g.rank; ++a) {
        long spin = node_spin(inst, m, a);
        int T = inst.levels(a);
        if (q_of(a, T) != inst.lambda[a - 1])
            return fail("top level mismatch at node " + std::to_string(a));
        for (int i = 1; i <= T; ++i)
            if (q_of(a, i) != vacancy_p(inst, m, a, i) + spin)
                return fail("p/q offset mismatch at node " + std::to_string(a) + ", level " +
                            std::to_string(i));
        for (int i = 0; i <= T + 2; ++i)
            if (q_of(a, i) != explicit_vacancy_q(inst, m, a, i))
                return fail("closed form mismatch at node " + std::to_string(a) + ", level " +
                            std::to_string(i));
    }

    if (g.simply_laced()) {
        // Uniform three-term identity (q_{a,0} := node spin).
        for (int a = 1; a <= g.rank; ++a)
            for (int j = 1; j <= inst.k; ++j) {
                long rhs = -entry(inst.n, a, j) + 2 * q_of(a, j) - q_of(a, j + 1);
                for (int b = 1; b <= g.rank; ++b)
                    if (g.C(a, b) != 0) rhs += g.C(a, b) * entry(m, b, j);
                if (q_of(a, j - 1) != rhs)
                    return fail("three-term identity failed at node " + std::to_string(a));
            }
        return true;
    }

    const int gam = g.gamma, gp = g.gamma_prime;
    const int t = g.t_of(gp);
    for (int a = 1; a <= g.rank; ++a) {
        if (g.is_short(a)) {
            // Short-node three-term identity over short neighbors, with the
            // long bridge correction at level t on the bridge node itself.
            for (int j = 1; j <= t; ++j) {
                long rhs = -entry(inst.n, a, j) + 2 * q_of(a, j) - q_of(a, j + 1);
                for (int b = 1; b <= g.rank; ++b)
                    if (g.is_short(b) && g.C(a, b) != 0) rhs += g.C(a, b) * entry(m, b, j);
                if (a == gp && j == t) rhs -= entry(m, gam, 1);
                if (q_of(a, j - 1) != rhs)
                    return fail("short-node identity failed at node " + std::to_string(a) +
                                ", level " + std::to_string(j));
            }
        } else {
            long rhs = -entry(inst.n, a, 1) + 2 * q_of(a, 1) - q_of(a, 2);
            for (int b = 1; b <= g.rank; ++b)
                if (g.is_long(b) && g.C(a, b) != 0) rhs += g.C(a, b) * entry(m, b, 1);
            if (a == gam) {
                for (int j = 1; j <= t; ++j) {
                    rhs -= static_cast<long>(j) * entry(m, gp, j);
                    long e = ((-(static_cast<long>(t + j))) % t + t) % t;
                    rhs -= e * entry(m, gp, t + j);
                }
            }
            if (node_spin(inst, m, a) != rhs)
                return fail("long-node identity failed at node " + std::to_string(a));
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

long enumerate_configs(const SumInstance& inst, const std::vector<long>& target,
                       const std::vector<int>& max_part, const Config* fixed_tail,
                       const std::function<void(const Config&)>& cb) {
    const AlgebraSpec& g = inst.g;
    const int r = g.rank;

    std::vector<long> rhs(r);
    for (int a = 1; a <= r; ++a) {
        long nu = 0;
        for (int j = 1; j <= inst.levels(a); ++j) nu += static_cast<long>(j) * entry(inst.n, a, j);
        rhs[a - 1] = target[a - 1] - inst.lambda[a - 1] + nu;
    }
    auto w = cartan_inverse_times(g, rhs);
    if (!w) return 0;

    // Remaining weight per node after the fixed tail above each cap.
    Config work = fixed_tail ? *fixed_tail : inst.zero_config();
    std::vector<long> rem(r);
    for (int a = 1; a <= r; ++a) {
        int cap = max_part[a - 1];
        long tail_weight = 0;
        for (int i = cap + 1; i <= inst.levels(a); ++i)
            tail_weight += static_cast<long>(i) * entry(work, a, i);
        rem[a - 1] = (*w)[a - 1] - tail_weight;
        if (rem[a - 1] < 0) return 0;
        for (int i = 1; i <= cap; ++i) work[a - 1][i - 1] = 0;
    }

    long count = 0;
    // Depth-first over nodes; within a node, assign counts for the largest
    // allowed part first.
    std::function<void(int)> node_rec = [&](int a) {
        if (a > r) {
            ++count;
            cb(work);
            return;
        }
        int cap = max_part[a - 1];
        std::function<void(int, long)> part_rec = [&](int part, long left) {
            if (part == 0) {
                if (left == 0) node_rec(a + 1);
                return;
            }
            if (part == 1) {
                work[a - 1][0] = left;
                node_rec(a + 1);
                work[a - 1][0] = 0;
                return;
            }
            for (long c = 0; c * part <= left; ++c) {
                work[a - 1][part - 1] = c;
                part_rec(part - 1, left - c * part);
            }
            work[a - 1][part - 1] = 0;
        };
        if (cap == 0) {
            if (rem[a - 1] == 0) node_rec(a + 1);
        } else {
            part_rec(cap, rem[a - 1]);
        }
        // (work row below cap is restored to zero by part_rec)
    };
    node_rec(1);
    return count;
}

long enumerate_zero_spin_configs(const SumInstance& inst,
                                 const std::function<void(const Config&)>& cb) {
    std::vector<long> zero(inst.g.rank, 0);
    std::vector<int> caps(inst.g.rank);
    for (int a = 1; a <= inst.g.rank; ++a) caps[a - 1] = inst.levels(a);
    return enumerate_configs(inst, zero, caps, nullptr, cb);
}

namespace {

Int weighted_sum(const SumInstance& inst, bool require_nonneg_vacancy) {
    inst.validate();
    Int total = 0;
    enumerate_zero_spin_configs(inst, [&](const Config& m) {
        Int w = 1;
        for (int a = 1; a <= inst.g.rank && w != 0; ++a) {
            for (int i = 1; i <= inst.levels(a); ++i) {
                long p = vacancy_p(inst, m, a, i);
                if (require_nonneg_vacancy && p < 0) {
                    w = 0;
                    break;
                }
                long mm = entry(m, a, i);
                if (mm == 0) continue;
                w *= extended_binomial(mm, Int(p));
                if (w == 0) break;
            }
        }
        total += w;
    });
    return total;
}

}  // namespace

Int m_sum(const SumInstance& inst) { return weighted_sum(inst, true); }

Int n_sum(const SumInstance& inst) { return weighted_sum(inst, false); }

}  // namespace frs
