#include "frs/genfun.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace frs {

namespace {

std::vector<int> all_levels_caps(const SumInstance& inst) {
    std::vector<int> caps(static_cast<std::size_t>(inst.g.rank));
    for (int a = 1; a <= inst.g.rank; ++a) caps[a - 1] = inst.levels(a);
    return caps;
}

bool passes_restriction(const SumInstance& inst, const Config& m, const std::vector<int>& K) {
    for (int a = 1; a <= inst.g.rank; ++a)
        for (int i = K[a - 1]; i < inst.levels(a); ++i)
            if (vacancy_q(inst, m, a, i) < 0) return false;
    return true;
}

// Weight of one configuration, without the seed factor prod u_a^{q_a}:
// integer coefficient prod binom(m+q, m) and monomial in level / bookkeeping
// variables.  Returns false when the coefficient vanishes.
bool config_weight(const SumInstance& inst, const Config& m, Int& coeff, Monomial& mono) {
    coeff = 1;
    mono = Monomial::one();
    for (int a = 1; a <= inst.g.rank; ++a) {
        for (int i = 1; i <= inst.levels(a); ++i) {
            long q = vacancy_q(inst, m, a, i);
            coeff *= extended_binomial(entry(m, a, i), Int(q));
            if (coeff == 0) return false;
            if (q != 0) mono = mono.mul(Monomial::single(var_ui(a, i), q));
            long d = delta_exponent(inst, m, a, i);
            if (d != 0) mono = mono.mul(Monomial::single(var_a(i), d));
        }
    }
    return true;
}

Monomial seed_monomial(const std::vector<long>& target) {
    Monomial mono;
    for (std::size_t a = 0; a < target.size(); ++a)
        if (target[a] != 0)
            mono = mono.mul(Monomial::single(var_u(static_cast<int>(a) + 1), target[a]));
    return mono;
}

void for_each_target(const SeedBox& box, const std::function<void(const std::vector<long>&)>& cb) {
    std::vector<long> v(box.lo);
    for (std::size_t a = 0; a < v.size(); ++a)
        if (box.lo[a] > box.hi[a]) return;
    for (;;) {
        cb(v);
        std::size_t a = 0;
        while (a < v.size() && v[a] == box.hi[a]) {
            v[a] = box.lo[a];
            ++a;
        }
        if (a == v.size()) return;
        ++v[a];
    }
}

}  // namespace

SeedBox SeedBox::cube(int rank, long lo, long hi) {
    SeedBox b;
    b.lo.assign(static_cast<std::size_t>(rank), lo);
    b.hi.assign(static_cast<std::size_t>(rank), hi);
    return b;
}

LaurentPoly z_coefficient(const SumInstance& inst, const std::vector<long>& target,
                          const ZOptions& opt) {
    if (target.size() != static_cast<std::size_t>(inst.g.rank))
        throw std::invalid_argument("z_coefficient: target size mismatch");
    std::vector<int> caps = opt.caps ? *opt.caps : all_levels_caps(inst);
    LaurentPoly out;
    enumerate_configs(inst, target, caps, opt.fixed_tail, [&](const Config& m) {
        if (opt.restriction && !passes_restriction(inst, m, *opt.restriction)) return;
        Int coeff;
        Monomial mono;
        if (config_weight(inst, m, coeff, mono)) out.add_term(mono, coeff);
    });
    if (opt.phi) return evaluate_phi(inst.g, *opt.phi, out);
    return out;
}

LaurentPoly z_window(const SumInstance& inst, const SeedBox& box, const ZOptions& opt) {
    LaurentPoly out;
    for_each_target(box, [&](const std::vector<long>& target) {
        LaurentPoly c = z_coefficient(inst, target, opt);
        if (!c.is_zero()) out += c.mul_term(seed_monomial(target), Int(1));
    });
    return out;
}

CrossCheckResult constant_term_cross_check(const SumInstance& inst) {
    std::vector<long> zero(static_cast<std::size_t>(inst.g.rank), 0);
    PhiSpec full;
    full.full = true;

    ZOptions unrestricted;
    unrestricted.phi = &full;
    CrossCheckResult res;
    res.n_value = z_coefficient(inst, zero, unrestricted).coefficient(Monomial::one());

    std::vector<int> ones(static_cast<std::size_t>(inst.g.rank), 1);
    ZOptions restricted = unrestricted;
    restricted.restriction = &ones;
    res.m_value = z_coefficient(inst, zero, restricted).coefficient(Monomial::one());

    res.matches_direct_sums = res.n_value == n_sum(inst) && res.m_value == m_sum(inst);
    return res;
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

const char* statement_token(FactorizationStatement s) {
    switch (s) {
        case FactorizationStatement::RankOneLevelOne: return "zkone";
        case FactorizationStatement::RankOneAllLevels: return "sltwofactorization";
        case FactorizationStatement::SimplyLacedLevelOneRational: return "zgone";
        case FactorizationStatement::SimplyLacedLevelOne: return "initialz";
        case FactorizationStatement::SimplyLacedAllLevels: return "gfactorization";
        case FactorizationStatement::GeneralLevelOne: return "geninit";
        case FactorizationStatement::GeneralAllLevels: return "zfactorized";
        case FactorizationStatement::RankOneSplit: return "pfactorization";
        case FactorizationStatement::SimplyLacedSplit: return "gfact";
        case FactorizationStatement::GeneralStep: return "recuz";
        case FactorizationStatement::GeneralSplit: return "factojgen";
        case FactorizationStatement::ShortPartialSplit: return "partialfactorization";
        case FactorizationStatement::GeneralTailExplicit: return "lastzfactor";
    }
    return "?";
}

std::optional<FactorizationStatement> statement_from_token(const std::string& token) {
    for (auto s : {FactorizationStatement::RankOneLevelOne, FactorizationStatement::RankOneAllLevels,
                   FactorizationStatement::SimplyLacedLevelOneRational,
                   FactorizationStatement::SimplyLacedLevelOne,
                   FactorizationStatement::SimplyLacedAllLevels,
                   FactorizationStatement::GeneralLevelOne, FactorizationStatement::GeneralAllLevels,
                   FactorizationStatement::RankOneSplit, FactorizationStatement::SimplyLacedSplit,
                   FactorizationStatement::GeneralStep, FactorizationStatement::GeneralSplit,
                   FactorizationStatement::ShortPartialSplit,
                   FactorizationStatement::GeneralTailExplicit})
        if (token == statement_token(s)) return s;
    return std::nullopt;
}

bool statement_is_split(FactorizationStatement s) {
    switch (s) {
        case FactorizationStatement::RankOneSplit:
        case FactorizationStatement::SimplyLacedSplit:
        case FactorizationStatement::GeneralStep:
        case FactorizationStatement::GeneralSplit:
        case FactorizationStatement::ShortPartialSplit:
        case FactorizationStatement::GeneralTailExplicit:
            return true;
        default:
            return false;
    }
}

bool statement_applies(FactorizationStatement s, const AlgebraSpec& g, int k, int j, int p) {
    switch (s) {
        case FactorizationStatement::RankOneLevelOne:
            return g.rank == 1 && k == 1 && j == 0 && p == 0;
        case FactorizationStatement::RankOneAllLevels:
            return g.rank == 1 && j == 0 && p == 0;
        case FactorizationStatement::SimplyLacedLevelOneRational:
        case FactorizationStatement::SimplyLacedLevelOne:
            return g.simply_laced() && k == 1 && j == 0 && p == 0;
        case FactorizationStatement::SimplyLacedAllLevels:
            return g.simply_laced() && j == 0 && p == 0;
        case FactorizationStatement::GeneralLevelOne:
            return k == 1 && j == 0 && p == 0;
        case FactorizationStatement::GeneralAllLevels:
            return j == 0 && p == 0;
        case FactorizationStatement::RankOneSplit:
            return g.rank == 1 && 1 <= j && j < k && p == 0;
        case FactorizationStatement::SimplyLacedSplit:
            return g.simply_laced() && 1 <= j && j < k && p == 0;
        case FactorizationStatement::GeneralStep:
            return k >= 2 && j == 1 && p == 0;
        case FactorizationStatement::GeneralSplit:
            return 1 <= j && j < k && p == 0;
        case FactorizationStatement::ShortPartialSplit:
            return !g.simply_laced() && j == 0 && 0 < p && p < g.t_max;
        case FactorizationStatement::GeneralTailExplicit:
            return !g.simply_laced() && 1 <= j && j < k && 0 < p && p < g.t_max;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Right-hand sides
// ---------------------------------------------------------------------------

namespace {

FactorRing::Value unit_value(const VariableId& v, long e) {
    FactorRing::Value out;
    out.coeff = Rat(1);
    out.mono = Monomial::single(v, e);
    return out;
}

// prod_a  D_{a,1} (D_{a,T_a} / D_{a,T_a+1})^{l_a+1} prod_{i<=T_a} D_{a,i}^{n_{a,i}} / u_{a,i}
// with T_a = t_a * top for the given number of top levels.
RationalFunction full_rhs(DeformedQTable& t, const SumInstance& inst, int top) {
    FactorRing& ring = t.ring();
    FactorRing::Value v = ring.one();
    for (int a = 1; a <= inst.g.rank; ++a) {
        const int T = inst.g.t_of(a) * top;
        const long l = inst.lambda[a - 1];
        v = ring.mul(v, t.entry_factored(a, 1));
        v = ring.mul(v, ring.pow(t.entry_factored(a, T), l + 1));
        v = ring.mul(v, ring.pow(t.entry_factored(a, T + 1), -(l + 1)));
        for (int i = 1; i <= T; ++i) {
            long n = entry(inst.n, a, i);
            if (n != 0) v = ring.mul(v, ring.pow(t.entry_factored(a, i), n));
            v = ring.mul(v, unit_value(var_ui(a, i), -1));
        }
    }
    return ring.expand(v);
}

// prod_a  u_{a,1}^{l_a} u_a^{l_a - n_{a,1}} / (1 - prod_b u_b^{C_{a,b}})^{l_a+1}
RationalFunction geometric_rhs(const SumInstance& inst) {
    LaurentPoly num = LaurentPoly::one();
    LaurentPoly den = LaurentPoly::one();
    for (int a = 1; a <= inst.g.rank; ++a) {
        const long l = inst.lambda[a - 1];
        Monomial mono = Monomial::single(var_ui(a, 1), l)
                            .mul(Monomial::single(var_u(a), l - entry(inst.n, a, 1)));
        num = num.mul_term(mono, Int(1));
        Monomial y;
        for (int b = 1; b <= inst.g.rank; ++b)
            if (inst.g.C(a, b) != 0) y = y.mul(Monomial::single(var_u(b), inst.g.C(a, b)));
        den = den * (LaurentPoly::one() - LaurentPoly(y, Int(1))).pow(l + 1);
    }
    return RationalFunction(std::move(num), std::move(den));
}

std::vector<int> split_tau(const AlgebraSpec& g, int j, int p) {
    std::vector<int> tau(static_cast<std::size_t>(g.rank));
    for (int a = 1; a <= g.rank; ++a) tau[a - 1] = g.is_short(a) ? g.t_of(a) * j + p : j;
    return tau;
}

// prod_a  D_{a,1} D_{a,tau_a} / D_{a,tau_a+1} prod_{i<=tau_a} D_{a,i}^{n_{a,i}} / u_{a,i}
RationalFunction split_prefactor(DeformedQTable& t, const SumInstance& inst,
                                 const std::vector<int>& tau) {
    FactorRing& ring = t.ring();
    FactorRing::Value v = ring.one();
    for (int a = 1; a <= inst.g.rank; ++a) {
        const int T = tau[a - 1];
        v = ring.mul(v, t.entry_factored(a, 1));
        v = ring.mul(v, t.entry_factored(a, T));
        v = ring.mul(v, ring.pow(t.entry_factored(a, T + 1), -1));
        for (int i = 1; i <= T; ++i) {
            long n = entry(inst.n, a, i);
            if (n != 0) v = ring.mul(v, ring.pow(t.entry_factored(a, i), n));
            v = ring.mul(v, unit_value(var_ui(a, i), -1));
        }
    }
    return ring.expand(v);
}

// The summand of the tail sum for the outer configuration, written in its own
// variables (levels 1..t_a(k-j), partial index p on short nodes) and then
// pushed through the (j, p) shift substitution.
RationalFunction substituted_outer_summand(DeformedQTable& t, const SumInstance& inst,
                                           const Config& m_out, int j, int p) {
    const AlgebraSpec& g = inst.g;
    SumInstance tail{g, inst.k - j, inst.lambda, {}};
    tail.n.resize(static_cast<std::size_t>(g.rank));
    Config m_tail(static_cast<std::size_t>(g.rank));
    for (int a = 1; a <= g.rank; ++a) {
        const int shift = g.t_of(a) * j;
        tail.n[a - 1].resize(static_cast<std::size_t>(tail.levels(a)));
        m_tail[a - 1].resize(static_cast<std::size_t>(tail.levels(a)));
        for (int i = 1; i <= tail.levels(a); ++i) {
            tail.n[a - 1][i - 1] = entry(inst.n, a, i + shift);
            m_tail[a - 1][i - 1] = entry(m_out, a, i + shift);
        }
    }

    Int coeff(1);
    Monomial mono;
    for (int a = 1; a <= g.rank; ++a) {
        const bool partial = p > 0 && g.is_short(a);
        if (partial) {
            long q = vacancy_q(tail, m_tail, a, p);
            if (q != 0) mono = mono.mul(Monomial::single(var_ui(a, p), q));
        } else {
            long q = node_spin(tail, m_tail, a);
            if (q != 0) mono = mono.mul(Monomial::single(var_u(a), q));
        }
        for (int i = (partial ? p + 1 : 1); i <= tail.levels(a); ++i) {
            long q = vacancy_q(tail, m_tail, a, i);
            coeff *= extended_binomial(entry(m_tail, a, i), Int(q));
            if (q != 0) mono = mono.mul(Monomial::single(var_ui(a, i), q));
            long d = delta_exponent(tail, m_tail, a, i);
            if (d != 0) mono = mono.mul(Monomial::single(var_a(i), d));
        }
    }
    if (coeff == 0) return RationalFunction();
    return ShiftSubstitution(t, j, p).apply(LaurentPoly(mono, coeff));
}

// The tail sum summand written explicitly in powers of the table entries:
//   prod_a D_{a,tau_a+1}^{-q_{a,tau_a}} D_{a,tau_a}^{q_{a,tau_a+1}}
//   * D_{gamma,j}^{sum_l Delta_{gamma',tau+l}}
//   * prod_{i>tau_a} u_{a,i}^{q_{a,i}} a_i^{Delta_{a,i}} binom(m+q, m),
// all q / Delta evaluated on the outer configuration with inner levels zero.
RationalFunction explicit_tail(DeformedQTable& t, const SumInstance& inst, const Config& m_out,
                               const std::vector<int>& tau, int j, int p) {
    const AlgebraSpec& g = inst.g;
    FactorRing& ring = t.ring();
    FactorRing::Value v = ring.one();
    for (int a = 1; a <= g.rank; ++a) {
        const int T = tau[a - 1];
        v = ring.mul(v, ring.pow(t.entry_factored(a, T + 1), -vacancy_q(inst, m_out, a, T)));
        v = ring.mul(v, ring.pow(t.entry_factored(a, T), vacancy_q(inst, m_out, a, T + 1)));
    }
    long bridge = 0;
    for (int l = 1; l <= g.t_of(g.gamma_prime) - p - 1; ++l)
        bridge += delta_exponent(inst, m_out, g.gamma_prime, tau[g.gamma_prime - 1] + l);
    if (bridge != 0) v = ring.mul(v, ring.pow(t.entry_factored(g.gamma, j), bridge));

    Int coeff(1);
    Monomial mono;
    for (int a = 1; a <= g.rank; ++a) {
        for (int i = tau[a - 1] + 1; i <= inst.levels(a); ++i) {
            long q = vacancy_q(inst, m_out, a, i);
            coeff *= extended_binomial(entry(m_out, a, i), Int(q));
            if (q != 0) mono = mono.mul(Monomial::single(var_ui(a, i), q));
            long d = delta_exponent(inst, m_out, a, i);
            if (d != 0) mono = mono.mul(Monomial::single(var_a(i), d));
        }
    }
    if (coeff == 0) return RationalFunction();
    return ring.expand(v) * RationalFunction(LaurentPoly(mono, coeff));
}

// ---------------------------------------------------------------------------
// Window comparison by denominator clearing
// ---------------------------------------------------------------------------

// Splits a Laurent polynomial by the seed-exponent vector of its terms; the
// seed factor is stripped from the stored monomials.
std::map<std::vector<long>, LaurentPoly> group_by_seed(const AlgebraSpec& g,
                                                       const LaurentPoly& poly) {
    std::map<std::vector<long>, LaurentPoly> out;
    for (const auto& [m, c] : poly.terms()) {
        std::vector<long> e(static_cast<std::size_t>(g.rank), 0);
        Monomial rest;
        for (const auto& [v, exp] : m.factors) {
            if (v.kind == VarKind::U)
                e[v.node - 1] = exp;
            else
                rest = rest.mul(Monomial::single(v, exp));
        }
        out[e].add_term(rest, c);
    }
    return out;
}

// Checks, for every seed exponent e in the window W, that the coefficient of
// u^e in  (direct sum) * den(rhs)  equals the coefficient of u^e in num(rhs).
// The comparison is a small convolution over the denominator's seed groups,
// with the direct-sum coefficients memoized per target, so no large
// polynomial product is ever formed.
VerifyReport window_compare(const AlgebraSpec& g, const SeedBox& W, const RationalFunction& rhs,
                            const std::function<LaurentPoly(const std::vector<long>&)>& coeff_of) {
    VerifyReport rep;
    const std::map<std::vector<long>, LaurentPoly> den = group_by_seed(g, rhs.den());
    const std::map<std::vector<long>, LaurentPoly> num = group_by_seed(g, rhs.num());
    std::map<std::vector<long>, LaurentPoly> memo;
    auto coeff = [&](const std::vector<long>& t) -> const LaurentPoly& {
        auto it = memo.find(t);
        if (it == memo.end()) it = memo.emplace(t, coeff_of(t)).first;
        return it->second;
    };
    for_each_target(W, [&](const std::vector<long>& e) {
        rep.nonzero += static_cast<long>(coeff(e).terms().size());
        LaurentPoly acc;
        std::vector<long> t(e.size());
        for (const auto& [d, D] : den) {
            for (std::size_t a = 0; a < e.size(); ++a) t[a] = e[a] - d[a];
            const LaurentPoly& L = coeff(t);
            if (!L.is_zero()) acc += L * D;
        }
        ++rep.compared;
        auto want = num.find(e);
        const LaurentPoly& expect = want == num.end() ? LaurentPoly::zero() : want->second;
        if (acc != expect && rep.ok) {
            rep.ok = false;
            std::ostringstream os;
            os << "coefficient mismatch at seed exponent (";
            for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
            os << ")";
            rep.detail = os.str();
        }
    });
    return rep;
}

void merge(VerifyReport& into, const VerifyReport& part, const std::string& tag) {
    into.compared += part.compared;
    into.nonzero += part.nonzero;
    if (!part.ok) {
        into.ok = false;
        if (into.detail.empty()) into.detail = tag + ": " + part.detail;
    }
}

void for_each_outer_config(const SumInstance& inst, const std::vector<int>& tau, int budget,
                           const std::function<void(const Config&)>& cb) {
    std::vector<std::pair<int, int>> slots;
    for (int a = 1; a <= inst.g.rank; ++a)
        for (int i = tau[a - 1] + 1; i <= inst.levels(a); ++i) slots.push_back({a, i});
    Config m = inst.zero_config();
    std::function<void(std::size_t, int)> rec = [&](std::size_t s, int rest) {
        if (s == slots.size()) {
            cb(m);
            return;
        }
        auto [a, i] = slots[s];
        for (int val = 0; val <= rest; ++val) {
            m[a - 1][i - 1] = val;
            rec(s + 1, rest - val);
        }
        m[a - 1][i - 1] = 0;
    };
    rec(0, budget);
}

}  // namespace

VerifyReport verify_factorization(DeformedQTable& table, const SumInstance& inst,
                                  const SeedBox& window, FactorizationStatement st, int j, int p,
                                  int fiber_bound) {
    inst.validate();
    const AlgebraSpec& g = inst.g;
    VerifyReport rep;
    if (!statement_applies(st, g, inst.k, j, p)) {
        rep.ok = false;
        rep.detail = std::string("statement ") + statement_token(st) + " does not apply here";
        return rep;
    }

    if (!statement_is_split(st)) {
        RationalFunction rhs;
        switch (st) {
            case FactorizationStatement::SimplyLacedLevelOneRational:
                rhs = geometric_rhs(inst);
                break;
            case FactorizationStatement::RankOneLevelOne:
            case FactorizationStatement::SimplyLacedLevelOne:
            case FactorizationStatement::GeneralLevelOne:
            case FactorizationStatement::RankOneAllLevels:
            case FactorizationStatement::SimplyLacedAllLevels:
            case FactorizationStatement::GeneralAllLevels:
                rhs = full_rhs(table, inst, inst.k);
                break;
            default:
                break;
        }
        return window_compare(g, window, rhs, [&](const std::vector<long>& t) {
            return z_coefficient(inst, t);
        });
    }

    std::vector<int> tau = split_tau(g, j, p);
    RationalFunction pre = split_prefactor(table, inst, tau);
    for_each_outer_config(inst, tau, fiber_bound, [&](const Config& m_out) {
        RationalFunction tail_part =
            st == FactorizationStatement::GeneralTailExplicit
                ? explicit_tail(table, inst, m_out, tau, j, p)
                : substituted_outer_summand(table, inst, m_out, j, p);
        ZOptions opt;
        opt.caps = &tau;
        opt.fixed_tail = &m_out;
        std::ostringstream tag;
        tag << "fiber";
        for (int a = 1; a <= g.rank; ++a)
            for (int i = tau[a - 1] + 1; i <= inst.levels(a); ++i)
                if (entry(m_out, a, i) != 0) tag << " m[" << a << "," << i << "]=" << entry(m_out, a, i);
        merge(rep,
              window_compare(g, window, pre * tail_part,
                             [&](const std::vector<long>& t) { return z_coefficient(inst, t, opt); }),
              tag.str());
    });
    return rep;
}

VerifyReport verify_ps_identity(const SumInstance& inst, const std::vector<int>* K,
                                const std::vector<int>* K_prime, const PhiSpec& phi,
                                const std::vector<bool>& ps_nodes, int bound) {
    inst.validate();
    VerifyReport rep;
    SeedBox box;
    for (int a = 1; a <= inst.g.rank; ++a) {
        box.lo.push_back(ps_nodes[a - 1] ? 0 : -bound);
        box.hi.push_back(bound);
    }
    ZOptions left, right;
    left.restriction = K;
    right.restriction = K_prime;
    left.phi = right.phi = &phi;
    for_each_target(box, [&](const std::vector<long>& target) {
        LaurentPoly lc = z_coefficient(inst, target, left);
        LaurentPoly rc = z_coefficient(inst, target, right);
        ++rep.compared;
        if (!lc.is_zero() || !rc.is_zero()) ++rep.nonzero;
        if (lc != rc && rep.ok) {
            rep.ok = false;
            std::ostringstream os;
            os << "differs at target (";
            for (std::size_t i = 0; i < target.size(); ++i)
                os << (i ? "," : "") << target[i];
            os << ")";
            rep.detail = os.str();
        }
    });
    return rep;
}

}  // namespace frs
