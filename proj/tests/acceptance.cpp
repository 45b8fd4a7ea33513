// Acceptance gate: one line per criterion, [PASS] or [FAIL], exit status 0
// only if every criterion holds.  All comparisons are exact (integers or
// polynomial identities); there are no tolerances anywhere.

#include <cstdio>
#include <cstdlib>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "frs/deformed.hpp"
#include "frs/fermionic.hpp"
#include "frs/genfun.hpp"
#include "frs/oracle.hpp"
#include "frs/qsystem.hpp"

using namespace frs;

namespace {

const std::vector<std::string> kAlgebras = {"A1", "A2", "A3", "B2", "B3",
                                            "C2", "C3", "D4", "G2"};

int max_k(const AlgebraSpec& g) { return (g.rank >= 3 || g.t_max == 3) ? 2 : 3; }

int window_halfwidth(int rank) {
    switch (rank) {
        case 1: return 8;
        case 2: return 4;
        case 3: return 3;
        default: return 2;
    }
}

int ps_bound(int rank) { return window_halfwidth(rank); }

void enumerate_vectors(std::size_t len, long budget, std::vector<long>& cur,
                       const std::function<void(const std::vector<long>&)>& cb) {
    if (cur.size() == len) {
        cb(cur);
        return;
    }
    for (long v = 0; v <= budget; ++v) {
        cur.push_back(v);
        enumerate_vectors(len, budget - v, cur, cb);
        cur.pop_back();
    }
}

void for_each_grid_instance(const AlgebraSpec& g, int k, long max_n, long max_lambda,
                            const std::function<void(const SumInstance&)>& cb) {
    std::size_t slots = 0;
    for (int a = 1; a <= g.rank; ++a) slots += static_cast<std::size_t>(g.t_of(a) * k);
    std::vector<long> lam, flat;
    enumerate_vectors(static_cast<std::size_t>(g.rank), max_lambda, lam,
                      [&](const std::vector<long>& lambda) {
        enumerate_vectors(slots, max_n, flat, [&](const std::vector<long>& nf) {
            SumInstance inst{g, k, lambda, {}};
            inst.n.resize(static_cast<std::size_t>(g.rank));
            std::size_t pos = 0;
            for (int a = 1; a <= g.rank; ++a) {
                std::size_t len = static_cast<std::size_t>(g.t_of(a) * k);
                inst.n[a - 1].assign(nf.begin() + pos, nf.begin() + pos + len);
                pos += len;
            }
            cb(inst);
        });
    });
}

std::string describe(const SumInstance& inst, int j = 0, int p = 0) {
    std::ostringstream os;
    os << inst.g.name() << " k=" << inst.k << " lambda=(";
    for (std::size_t i = 0; i < inst.lambda.size(); ++i)
        os << (i ? "," : "") << inst.lambda[i];
    os << ") n=(";
    for (std::size_t a = 0; a < inst.n.size(); ++a) {
        if (a) os << ";";
        for (std::size_t i = 0; i < inst.n[a].size(); ++i)
            os << (i ? "," : "") << inst.n[a][i];
    }
    os << ")";
    if (j || p) os << " j=" << j << " p=" << p;
    return os.str();
}

// ---------------------------------------------------------------------------
// Criteria 1 and 9: restricted == unrestricted on the full grid, and the
// windowed-series constant term reproduces both direct sums.
// ---------------------------------------------------------------------------
void criteria_1_and_9(bool& ok1, std::string& msg1, bool& ok9, std::string& msg9) {
    long checked = 0;
    std::string fail1, fail9;
    for (const std::string& name : kAlgebras) {
        AlgebraSpec g = build_algebra(name);
        for (int k = 1; k <= max_k(g); ++k)
            for_each_grid_instance(g, k, 3, 4, [&](const SumInstance& inst) {
                ++checked;
                CrossCheckResult res = constant_term_cross_check(inst);
                if (!res.matches_direct_sums && fail9.empty()) fail9 = describe(inst);
                if (res.n_value != res.m_value && fail1.empty()) fail1 = describe(inst);
            });
    }
    std::ostringstream os1, os9;
    os1 << checked << " instances, restricted == unrestricted";
    os9 << checked << " instances, constant term == both direct sums";
    if (!fail1.empty()) os1 << "; first failure: " << fail1;
    if (!fail9.empty()) os9 << "; first failure: " << fail9;
    msg1 = os1.str();
    msg9 = os9.str();
    ok1 = fail1.empty();
    ok9 = fail9.empty();
}

// ---------------------------------------------------------------------------
// Criterion 2: the quadratic recursion closes polynomially, and the rank-one
// column is the three-term family.
// ---------------------------------------------------------------------------
bool criterion_2(std::string& msg) {
    std::ostringstream os;
    for (const std::string& name : kAlgebras) {
        try {
            solve_q_system(build_algebra(name), 4);
        } catch (const std::exception& e) {
            msg = name + " failed: " + e.what();
            return false;
        }
    }
    try {
        solve_q_system(build_algebra("F4"), 3);
    } catch (const std::exception& e) {
        msg = std::string("F4 failed: ") + e.what();
        return false;
    }
    if (!chebyshev_check(8)) {
        msg = "rank-one column disagrees with the three-term family";
        return false;
    }
    msg = "all algebras solve to scaled level 4 (F4: 3); rank-one column is three-term to depth 8";
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 3: the floor-interleaving edge term reproduces every explicit
// per-family list at every index the level-4 solve uses.
// ---------------------------------------------------------------------------
bool criterion_3(std::string& msg) {
    long checked = 0;
    for (const std::string& name : {"B2", "B3", "C2", "C3", "F4", "G2"}) {
        AlgebraSpec g = build_algebra(name);
        const int scaled = name == std::string("F4") ? 3 : 4;
        QSystemTable table(g);
        for (int a = 1; a <= g.rank; ++a)
            for (int b : g.neighbors(a))
                for (int j = 1; j < g.t_of(a) * scaled; ++j) {
                    ++checked;
                    if (table.t_term(a, b, j) != table.t_term_explicit(a, b, j)) {
                        std::ostringstream os;
                        os << name << " edge (" << a << "," << b << ") index " << j;
                        msg = os.str();
                        return false;
                    }
                }
    }
    std::ostringstream os;
    os << checked << " edge terms match the explicit catalogs";
    msg = os.str();
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 4: deformed table built by the quadratic relation == rebuilt from
// the one-step shift, and the level-shift self-similarity holds.
// ---------------------------------------------------------------------------
bool criterion_4(std::string& msg) {
    const std::vector<std::pair<std::string, int>> depths = {
        {"A1", 6}, {"A2", 4}, {"A3", 4}, {"D4", 4},
        {"B2", 2}, {"C2", 2}, {"G2", 2}, {"F4", 2}};
    for (const auto& [name, scaled] : depths) {
        AlgebraSpec g = build_algebra(name);
        std::string why;
        if (!verify_shift_rebuild(g, scaled, &why)) {
            msg = name + " rebuild: " + why;
            return false;
        }
        DeformedQTable table(g);
        if (!verify_shift_recursion(table, 1, scaled, &why)) {
            msg = name + " self-similarity: " + why;
            return false;
        }
    }
    msg = "quadratic and shift-rebuilt tables agree; self-similarity holds at every depth";
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 5: every factorized form on its default window, five instances
// per applicable algebra, at least 20 nonzero window coefficients each.
// ---------------------------------------------------------------------------

struct SplitCase {
    SumInstance inst;
    int j = 0, p = 0;
};

// Deterministic candidate stream.  Window richness grows with the total of n
// and shrinks with lambda, so candidates favor small weights and two or
// three units of n; expensive (non-simply-laced) algebras at k > 1 keep
// lambda on long nodes and n on shallow levels so the table factors that
// enter the right-hand side stay small.
SumInstance candidate_instance(const AlgebraSpec& g, int k, int v) {
    if (g.rank == 1) {
        if (k == 1) return SumInstance{g, 1, {v % 2}, {{4 + v}}};
        static const long table[5][4] = {{1, 2, 1, 1},
                                         {0, 2, 2, 2},
                                         {3, 2, 2, 1},
                                         {2, 1, 2, 2},
                                         {1, 3, 1, 2}};
        const long* row = table[v % 5];
        return SumInstance{g, 3, {row[0]}, {{row[1] + v / 5, row[2], row[3]}}};
    }
    const bool shallow = !g.simply_laced() && k > 1;
    // triple-laced table entries grow fast with the level, so at k > 1 the
    // right-hand side must not raise them to powers above one
    const bool lean = shallow && g.t_max >= 3;
    std::minstd_rand rng(static_cast<unsigned>(7919 * (v + 1)));
    rng.discard(5);
    std::vector<long> lambda(static_cast<std::size_t>(g.rank), 0);
    for (int t = 0; t < (lean ? std::min(v % 3, 1) : v % 3); ++t) {
        int node = static_cast<int>(rng() % static_cast<unsigned>(g.rank)) + 1;
        if (shallow && !g.is_long(node)) node = g.gamma ? g.gamma : 1;
        lambda[node - 1] += lean ? 1 : 1 + static_cast<long>(rng() % 2);
    }
    SumInstance inst{g, k, std::move(lambda), {}};
    inst.n.resize(static_cast<std::size_t>(g.rank));
    std::vector<std::pair<int, int>> slots;
    for (int a = 1; a <= g.rank; ++a) {
        inst.n[a - 1].assign(static_cast<std::size_t>(g.t_of(a) * k), 0);
        for (int i = 1; i <= g.t_of(a) * k; ++i)
            if (!shallow || i <= std::max(g.t_of(a), 2)) slots.emplace_back(a, i);
    }
    const int placements = 2 + v % 3;
    for (int t = 0; t < placements; ++t) {
        auto [a, i] = slots[rng() % slots.size()];
        inst.n[a - 1][static_cast<std::size_t>(i - 1)] +=
            lean ? 1 : 1 + static_cast<long>(rng() % 2);
    }
    inst.validate();
    return inst;
}

SplitCase make_case(const AlgebraSpec& g, FactorizationStatement st, int v) {
    int k = 1, j = 0, p = 0;
    switch (st) {
        case FactorizationStatement::RankOneLevelOne:
        case FactorizationStatement::SimplyLacedLevelOneRational:
        case FactorizationStatement::SimplyLacedLevelOne:
        case FactorizationStatement::GeneralLevelOne:
            break;
        case FactorizationStatement::RankOneAllLevels:
        case FactorizationStatement::SimplyLacedAllLevels:
        case FactorizationStatement::GeneralAllLevels:
            k = 2;
            break;
        case FactorizationStatement::RankOneSplit:
            k = 3;
            j = 1 + v % 2;
            break;
        case FactorizationStatement::SimplyLacedSplit:
        case FactorizationStatement::GeneralStep:
            k = 2;
            j = 1;
            break;
        case FactorizationStatement::GeneralSplit:
            if (g.rank <= 2 && g.t_max <= 2) {
                k = v % 3 < 2 ? 2 : 3;
                j = k == 2 ? 1 : 1 + v % 2;
            } else {
                k = 2;
                j = 1;
            }
            break;
        case FactorizationStatement::ShortPartialSplit:
            k = v % 3 == 0 ? 1 : 2;
            p = g.t_max > 1 ? 1 + v % (g.t_max - 1) : 1;
            break;
        case FactorizationStatement::GeneralTailExplicit:
            k = 2;
            j = 1;
            p = g.t_max > 1 ? 1 + v % (g.t_max - 1) : 1;
            break;
    }
    return {candidate_instance(g, k, v), j, p};
}

bool criterion_5(std::string& msg) {
    long verified = 0;
    for (const std::string& name : kAlgebras) {
        AlgebraSpec g = build_algebra(name);
        DeformedQTable table(g);
        SeedBox box = SeedBox::cube(g.rank, -window_halfwidth(g.rank), window_halfwidth(g.rank));
        for (auto st : {FactorizationStatement::RankOneLevelOne,
                        FactorizationStatement::RankOneAllLevels,
                        FactorizationStatement::SimplyLacedLevelOneRational,
                        FactorizationStatement::SimplyLacedLevelOne,
                        FactorizationStatement::SimplyLacedAllLevels,
                        FactorizationStatement::GeneralLevelOne,
                        FactorizationStatement::GeneralAllLevels,
                        FactorizationStatement::RankOneSplit,
                        FactorizationStatement::SimplyLacedSplit,
                        FactorizationStatement::GeneralStep,
                        FactorizationStatement::GeneralSplit,
                        FactorizationStatement::ShortPartialSplit,
                        FactorizationStatement::GeneralTailExplicit}) {
            int applicable = 0, accepted = 0;
            const bool trace = std::getenv("ACCEPTANCE_TRACE") != nullptr;
            for (int v = 0; v < 80 && accepted < 5; ++v) {
                SplitCase c = make_case(g, st, v);
                if (!statement_applies(st, g, c.inst.k, c.j, c.p)) continue;
                ++applicable;
                const auto t0 = std::chrono::steady_clock::now();
                VerifyReport rep = verify_factorization(table, c.inst, box, st, c.j, c.p);
                if (trace) {
                    std::fprintf(stderr, "  %s %s v=%d nonzero=%ld %.2fs\n", statement_token(st),
                                 describe(c.inst, c.j, c.p).c_str(), v, rep.nonzero,
                                 std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                               t0)
                                     .count());
                    std::fflush(stderr);
                }
                ++verified;
                if (!rep.ok) {
                    msg = std::string(statement_token(st)) + " failed on " +
                          describe(c.inst, c.j, c.p) + ": " + rep.detail;
                    return false;
                }
                // a rank-one level-one window holds at most ~w coefficients
                // (single level variable, fixed spin parity), so the richness
                // bound is the structural cap there
                const long needed = (g.rank == 1 && c.inst.k == 1) ? 5 : 20;
                if (rep.nonzero >= needed) ++accepted;
            }
            if (applicable == 0) continue;  // statement undefined for this algebra
            if (accepted < 5) {
                msg = std::string(statement_token(st)) + " on " + name + ": only " +
                      std::to_string(accepted) + " instances with a rich enough window";
                return false;
            }
        }
    }
    std::ostringstream os;
    os << verified
       << " statement instances verified; 5 per statement and algebra meet the window-richness "
          "bound";
    msg = os.str();
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 6: power-series identities, single threshold steps and the
// end-to-end restricted == unrestricted theorems.
// ---------------------------------------------------------------------------
bool criterion_6(std::string& msg) {
    long verified = 0;
    auto check = [&](const SumInstance& inst, const std::vector<int>* K,
                     const std::vector<int>* Kp, const PhiSpec& phi,
                     const std::vector<bool>& ps, int bound, const char* what) -> bool {
        VerifyReport rep = verify_ps_identity(inst, K, Kp, phi, ps, bound);
        ++verified;
        if (!rep.ok) {
            msg = std::string(what) + " failed on " + describe(inst) + ": " + rep.detail;
            return false;
        }
        return true;
    };

    for (const std::string& name : kAlgebras) {
        AlgebraSpec g = build_algebra(name);
        const int bound = ps_bound(g.rank);

        std::vector<bool> all_nodes(static_cast<std::size_t>(g.rank), true);
        std::vector<int> ones(static_cast<std::size_t>(g.rank), 1);

        for (int v = 0; v < 5; ++v) {
            // threshold step at one node after the matching evaluation
            if (g.rank == 1) {
                SumInstance inst = candidate_instance(g, 3, v);
                int j = 1 + v % 2;
                PhiSpec phi;
                phi.j = j;
                std::vector<int> K{j}, Kp{j + 1};
                if (!check(inst, &K, &Kp, phi, {true}, bound, "rank-one threshold step"))
                    return false;
            } else if (g.simply_laced()) {
                SumInstance inst = candidate_instance(g, 2, v);
                int alpha = v % g.rank + 1;
                PhiSpec phi;
                phi.j = 1;
                std::vector<int> K(ones), Kp(ones);
                K[alpha - 1] = 2;
                std::vector<bool> ps(static_cast<std::size_t>(g.rank), false);
                ps[alpha - 1] = true;
                if (!check(inst, &K, &Kp, phi, ps, bound, "threshold step")) return false;
            } else {
                // long-node step after the level-(1,0) evaluation
                SumInstance inst = candidate_instance(g, 2, v);
                int alpha = 0;
                for (int a = 1; a <= g.rank; ++a)
                    if (g.is_long(a) && (alpha == 0 || v % 2 == a % 2)) alpha = a;
                PhiSpec phi;
                phi.j = 1;
                std::vector<int> K(static_cast<std::size_t>(g.rank)), Kp;
                for (int a = 1; a <= g.rank; ++a) K[a - 1] = g.t_of(a);
                Kp = K;
                K[alpha - 1] = 2;
                Kp[alpha - 1] = 1;
                std::vector<bool> ps(static_cast<std::size_t>(g.rank), false);
                ps[alpha - 1] = true;
                if (!check(inst, &K, &Kp, phi, ps, bound, "long-node threshold step"))
                    return false;

                // short-node step under a partial evaluation (j = 0, p >= 1)
                SumInstance inst2 = candidate_instance(g, 2, v);
                int beta = 0;
                for (int a = 1; a <= g.rank; ++a)
                    if (g.is_short(a) && (beta == 0 || v % 2 == a % 2)) beta = a;
                int p = 1 + v % (g.t_max - 1);
                PhiSpec phi2;
                phi2.p = p;
                std::vector<int> K2(ones), Kp2(ones);
                K2[beta - 1] = p + 1;
                Kp2[beta - 1] = p;
                std::vector<bool> ps2(static_cast<std::size_t>(g.rank), false);
                ps2[beta - 1] = true;
                if (!check(inst2, &K2, &Kp2, phi2, ps2, bound, "short-node threshold step"))
                    return false;
            }

            // end-to-end: thresholds (1,...,1) against no restriction at the
            // full evaluation, as a power series in every seed variable
            SumInstance inst = candidate_instance(g, g.rank == 1 ? 3 : 2, v);
            PhiSpec full;
            full.full = true;
            if (!check(inst, &ones, nullptr, full, all_nodes, bound, "end-to-end")) return false;
        }
    }

    // negative control: off the power-series region the two sides differ
    {
        SumInstance inst{build_algebra("A1"), 2, {0}, {{0, 1}}};
        PhiSpec full;
        full.full = true;
        std::vector<int> ones{1};
        VerifyReport rep = verify_ps_identity(inst, &ones, nullptr, full, {false}, 4);
        if (rep.ok) {
            msg = "negative control: sides agree even at negative seed exponents";
            return false;
        }
    }

    std::ostringstream os;
    os << verified << " power-series identities verified (plus negative control)";
    msg = os.str();
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 7: independent oracles agree with both weighted sums.
// ---------------------------------------------------------------------------
bool criterion_7(std::string& msg) {
    AlgebraSpec a1 = build_algebra("A1");
    long checked = 0;
    std::vector<long> n(8, 0);
    std::string fail;
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (!fail.empty()) return;
        if (i == n.size()) {
            for (long l = 0; l <= 8 && fail.empty(); ++l) {
                Int cg = clebsch_gordan_multiplicity(l, n);
                std::vector<long> row(n);
                SumInstance inst{a1, 8, {l}, {row}};
                // the same multiplicity with the top label absorbed as one
                // more tensor factor
                std::vector<long> shifted(n);
                if (l > 0) ++shifted[static_cast<std::size_t>(l - 1)];
                SumInstance inst0{a1, 8, {0}, {shifted}};
                ++checked;
                if (catalan_residue_multiplicity(l, n, 8) != cg || n_sum(inst) != cg ||
                    m_sum(inst) != cg || n_sum(inst0) != cg)
                    fail = describe(inst);
            }
            return;
        }
        long unit = static_cast<long>(i) + 1;
        for (long v = 0; unit * v <= left && fail.empty(); ++v) {
            n[i] = v;
            rec(i + 1, left - unit * v);
        }
        n[i] = 0;
    };
    rec(0, 8);
    if (!fail.empty()) {
        msg = "oracle disagreement at " + fail;
        return false;
    }

    long identities = 0;
    for (const std::string& name : {"A2", "A3"}) {
        AlgebraSpec g = build_algebra(name);
        bool bad = false;
        for_each_grid_instance(g, 2, 3, 0, [&](const SumInstance& inst) {
            if (bad) return;
            ++identities;
            std::string why;
            if (!verify_hkoty_character_identity(g, 2, inst.n, &why)) {
                msg = name + " character identity: " + why;
                bad = true;
            }
        });
        if (bad) return false;
    }

    std::ostringstream os;
    os << checked << " rank-one grid points agree across all four computations; " << identities
       << " character identities hold";
    msg = os.str();
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 8: per-family explicit vacancy formulas and recurrences on
// random configurations.
// ---------------------------------------------------------------------------
bool criterion_8(std::string& msg) {
    std::mt19937 rng(20260826);
    long checked = 0;
    for (const std::string& name : {"B2", "B3", "C2", "C3", "F4", "G2"}) {
        AlgebraSpec g = build_algebra(name);
        for (int trial = 0; trial < 1000; ++trial) {
            int k = 1 + static_cast<int>(rng() % 2);
            SumInstance inst{g, k, {}, {}};
            inst.lambda.resize(static_cast<std::size_t>(g.rank));
            inst.n.resize(static_cast<std::size_t>(g.rank));
            Config m(static_cast<std::size_t>(g.rank));
            for (int a = 1; a <= g.rank; ++a) {
                inst.lambda[a - 1] = static_cast<long>(rng() % 4);
                inst.n[a - 1].resize(static_cast<std::size_t>(g.t_of(a) * k));
                m[a - 1].resize(static_cast<std::size_t>(g.t_of(a) * k));
                for (auto& x : inst.n[a - 1]) x = static_cast<long>(rng() % 3);
                for (auto& x : m[a - 1]) x = static_cast<long>(rng() % 4);
            }
            inst.validate();
            ++checked;
            std::string why;
            if (!verify_q_recurrences(inst, m, &why)) {
                msg = name + ": " + why;
                return false;
            }
        }
    }
    std::ostringstream os;
    os << checked << " random configurations satisfy the explicit per-family formulas";
    msg = os.str();
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    // optional arguments select a subset of criteria (for focused reruns)
    auto wanted = [&](int idx) {
        if (argc <= 1) return true;
        for (int i = 1; i < argc; ++i)
            if (std::atoi(argv[i]) == idx) return true;
        return false;
    };
    bool all_ok = true;
    auto report = [&](int idx, const char* title, bool ok, const std::string& detail) {
        std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", idx, title,
                    detail.c_str());
        std::fflush(stdout);
        all_ok = all_ok && ok;
    };

    std::string msg;
    if (wanted(1) || wanted(9)) {
        std::string msg9;
        bool ok1 = false, ok9 = false;
        criteria_1_and_9(ok1, msg, ok9, msg9);
        if (wanted(1))
            report(1, "restricted equals unrestricted on the exhaustive grid", ok1, msg);
        if (wanted(9))
            report(9, "constant-term extraction reproduces both direct sums", ok9, msg9);
    }
    if (wanted(2)) report(2, "polynomial closure of the quadratic recursion", criterion_2(msg), msg);
    if (wanted(3))
        report(3, "floor-interleaved edge terms match the explicit catalogs", criterion_3(msg),
               msg);
    if (wanted(4))
        report(4, "deformed table equivalences under the level shift", criterion_4(msg), msg);
    if (wanted(5)) report(5, "factorized forms on their default windows", criterion_5(msg), msg);
    if (wanted(6))
        report(6, "power-series identities, stepwise and end-to-end", criterion_6(msg), msg);
    if (wanted(7)) report(7, "independent multiplicity oracles", criterion_7(msg), msg);
    if (wanted(8))
        report(8, "explicit per-family vacancy formulas on random configurations", criterion_8(msg),
               msg);

    return all_ok ? 0 : 1;
}
