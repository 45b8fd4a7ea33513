#include "frs/arith.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace frs {

// ---------------------------------------------------------------------------
// VariableId
// ---------------------------------------------------------------------------

std::string VariableId::str() const {
    std::ostringstream os;
    switch (kind) {
        case VarKind::U: os << "u" << node; break;
        case VarKind::Ui: os << "u" << node << "_" << level; break;
        case VarKind::A: os << "a" << level; break;
        case VarKind::T: os << "t" << node; break;
        case VarKind::X: os << "x" << node; break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

std::int64_t Monomial::exponent_of(const VariableId& v) const {
    for (const auto& [var, e] : factors)
        if (var == v) return e;
    return 0;
}

Monomial Monomial::mul(const Monomial& o) const {
    Monomial out;
    out.factors.reserve(factors.size() + o.factors.size());
    std::size_t i = 0, j = 0;
    while (i < factors.size() || j < o.factors.size()) {
        if (j == o.factors.size() || (i < factors.size() && factors[i].first < o.factors[j].first)) {
            out.factors.push_back(factors[i++]);
        } else if (i == factors.size() || o.factors[j].first < factors[i].first) {
            out.factors.push_back(o.factors[j++]);
        } else {
            std::int64_t e = factors[i].second + o.factors[j].second;
            if (e != 0) out.factors.push_back({factors[i].first, e});
            ++i;
            ++j;
        }
    }
    return out;
}

Monomial Monomial::div(const Monomial& o) const { return mul(o.pow(-1)); }

Monomial Monomial::pow(std::int64_t k) const {
    Monomial out;
    if (k == 0) return out;
    out.factors.reserve(factors.size());
    for (const auto& [v, e] : factors) out.factors.push_back({v, e * k});
    return out;
}

int Monomial::cmp(const Monomial& a, const Monomial& b) {
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        std::int64_t ea = 0, eb = 0;
        if (j == b.factors.size() ||
            (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            ea = a.factors[i++].second;
        } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
            eb = b.factors[j++].second;
        } else {
            ea = a.factors[i++].second;
            eb = b.factors[j++].second;
        }
        if (ea != eb) return ea < eb ? -1 : 1;
    }
    return 0;
}

std::string Monomial::str() const {
    if (factors.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, e] : factors) {
        if (!first) os << "*";
        first = false;
        os << v.str();
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// LaurentPoly
// ---------------------------------------------------------------------------

bool LaurentPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
}

void LaurentPoly::add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Int LaurentPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    if (a.is_zero() || b.is_zero()) return out;
    // Multiply with the smaller factor outermost to keep map lookups cheap.
    const LaurentPoly& s = a.term_count() <= b.term_count() ? a : b;
    const LaurentPoly& l = a.term_count() <= b.term_count() ? b : a;
    for (const auto& [ms, cs] : s.terms_)
        for (const auto& [ml, cl] : l.terms_) out.add_term(ms.mul(ml), cs * cl);
    return out;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

LaurentPoly LaurentPoly::mul_term(const Monomial& m, const Int& c) const {
    LaurentPoly out;
    if (c == 0) return out;
    for (const auto& [mm, cc] : terms_) out.terms_.emplace(mm.mul(m), cc * c);
    return out;
}

LaurentPoly LaurentPoly::pow(std::int64_t k) const {
    if (k < 0) throw std::invalid_argument("LaurentPoly::pow: negative exponent");
    LaurentPoly acc = one();
    LaurentPoly base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

std::optional<std::pair<std::int64_t, std::int64_t>> LaurentPoly::exponent_range(
    const VariableId& v) const {
    if (terms_.empty()) return std::nullopt;
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (const auto& [m, c] : terms_) {
        std::int64_t e = m.exponent_of(v);
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    return std::pair{lo, hi};
}

std::vector<VariableId> LaurentPoly::variables() const {
    std::set<VariableId> vs;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors) vs.insert(v);
    return {vs.begin(), vs.end()};
}

LaurentPoly LaurentPoly::truncated(const VariableId& v, std::int64_t lo, std::int64_t hi) const {
    LaurentPoly out;
    for (const auto& [m, c] : terms_) {
        std::int64_t e = m.exponent_of(v);
        if (e >= lo && e <= hi) out.terms_.emplace(m, c);
    }
    return out;
}

LaurentPoly LaurentPoly::set_to_one(const std::function<bool(const VariableId&)>& pred) const {
    LaurentPoly out;
    for (const auto& [m, c] : terms_) {
        Monomial kept;
        for (const auto& [v, e] : m.factors)
            if (!pred(v)) kept.factors.push_back({v, e});
        out.add_term(kept, c);
    }
    return out;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!first) os << (c >= 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Int a = abs(c);
        if (m.is_one()) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << m.str();
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// extended_binomial
// ---------------------------------------------------------------------------

Int extended_binomial(long m, const Int& p) {
    if (m < 0) throw std::invalid_argument("extended_binomial: m must be >= 0");
    Int num = 1;
    for (long t = 1; t <= m; ++t) num *= p + t;
    Int fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
    Int q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), fact.get_mpz_t());
    return q;
}

// ---------------------------------------------------------------------------
// exact_divide
// ---------------------------------------------------------------------------

bool exact_divide(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& quotient) {
    if (b.is_zero()) throw std::invalid_argument("exact_divide: division by zero");
    quotient = LaurentPoly::zero();
    if (a.is_zero()) return true;

    // Per-variable exponent box the quotient must live in.
    std::map<VariableId, std::pair<std::int64_t, std::int64_t>> box;
    {
        std::set<VariableId> vars;
        for (const auto& v : a.variables()) vars.insert(v);
        for (const auto& v : b.variables()) vars.insert(v);
        for (const auto& v : vars) {
            auto ra = a.exponent_range(v).value();
            auto rb = b.exponent_range(v).value();
            std::int64_t lo = ra.first - rb.first;
            std::int64_t hi = ra.second - rb.second;
            if (hi < lo) return false;
            box.emplace(v, std::pair{lo, hi});
        }
    }

    const auto& bt = b.terms();
    const Monomial& blead = bt.rbegin()->first;
    const Int& blc = bt.rbegin()->second;

    LaurentPoly r = a;
    LaurentPoly q;
    while (!r.is_zero()) {
        const Monomial& rlead = r.terms().rbegin()->first;
        const Int& rlc = r.terms().rbegin()->second;
        Monomial e = rlead.div(blead);
        for (const auto& [v, exp] : e.factors) {
            auto it = box.find(v);
            std::int64_t lo = it == box.end() ? 0 : it->second.first;
            std::int64_t hi = it == box.end() ? 0 : it->second.second;
            if (exp < lo || exp > hi) return false;
        }
        Int c;
        mpz_tdiv_q(c.get_mpz_t(), rlc.get_mpz_t(), blc.get_mpz_t());
        if (c * blc != rlc) return false;
        q.add_term(e, c);
        r -= b.mul_term(e, c);
    }
    quotient = q;
    return true;
}

// ---------------------------------------------------------------------------
// RationalFunction
// ---------------------------------------------------------------------------

RationalFunction::RationalFunction(LaurentPoly num, LaurentPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly::one();
        return;
    }
    // Common monomial factor: shift both by the per-variable minimum exponent.
    Monomial shift;
    {
        std::set<VariableId> vars;
        for (const auto& v : num_.variables()) vars.insert(v);
        for (const auto& v : den_.variables()) vars.insert(v);
        for (const auto& v : vars) {
            std::int64_t lo = std::min(num_.exponent_range(v)->first, den_.exponent_range(v)->first);
            if (lo != 0) shift = shift.mul(Monomial::single(v, -lo));
        }
    }
    // Integer content across both parts.
    Int g = 0;
    for (const auto& [m, c] : num_.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    for (const auto& [m, c] : den_.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 0) g = 1;
    // Sign: make the leading denominator coefficient positive.
    if (den_.terms().rbegin()->second < 0) g = -g;
    if (!shift.is_one() || g != 1) {
        LaurentPoly n2, d2;
        for (const auto& [m, c] : num_.terms()) n2.add_term(m.mul(shift), c / g);
        for (const auto& [m, c] : den_.terms()) d2.add_term(m.mul(shift), c / g);
        num_ = std::move(n2);
        den_ = std::move(d2);
    }
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.num_.is_zero()) throw std::invalid_argument("RationalFunction: division by zero");
    return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::inverse() const {
    if (num_.is_zero()) throw std::invalid_argument("RationalFunction: inverse of zero");
    return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(std::int64_t k) const {
    if (k < 0) return inverse().pow(-k);
    return RationalFunction(num_.pow(k), den_.pow(k));
}

bool RationalFunction::equals(const RationalFunction& o) const {
    return num_ * o.den_ == o.num_ * den_;
}

std::string RationalFunction::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

// ---------------------------------------------------------------------------
// substitute
// ---------------------------------------------------------------------------

RationalFunction substitute(
    const LaurentPoly& p,
    const std::function<const RationalFunction*(const VariableId&)>& image) {
    if (p.is_zero()) return RationalFunction();

    // Collect substituted variables and the exponent ranges they appear with.
    struct SubInfo {
        const RationalFunction* rf;
        std::int64_t max_pos = 0;  // largest positive exponent seen
        std::int64_t max_neg = 0;  // largest magnitude of negative exponents
        std::vector<LaurentPoly> num_pows, den_pows;  // cached powers
    };
    std::map<VariableId, SubInfo> subs;
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [v, e] : m.factors) {
            const RationalFunction* rf = image(v);
            if (!rf) continue;
            auto& info = subs[v];
            info.rf = rf;
            if (e > 0) info.max_pos = std::max(info.max_pos, e);
            if (e < 0) info.max_neg = std::max(info.max_neg, -e);
        }
    }
    if (subs.empty()) return RationalFunction(p);

    auto power_of = [](std::vector<LaurentPoly>& cache, const LaurentPoly& base,
                       std::int64_t k) -> const LaurentPoly& {
        while (static_cast<std::int64_t>(cache.size()) <= k)
            cache.push_back(cache.empty() ? LaurentPoly::one() : cache.back() * base);
        return cache[static_cast<std::size_t>(k)];
    };

    // Common denominator: prod_v num_v^{max_neg} * den_v^{max_pos}.  Each
    // term's value times this is polynomial, so the whole substitution is a
    // single polynomial sum over one denominator.
    LaurentPoly common_den = LaurentPoly::one();
    for (auto& [v, info] : subs) {
        common_den = common_den * power_of(info.num_pows, info.rf->num(), info.max_neg);
        common_den = common_den * power_of(info.den_pows, info.rf->den(), info.max_pos);
    }

    LaurentPoly numerator;
    for (const auto& [m, c] : p.terms()) {
        LaurentPoly term = LaurentPoly(c);
        Monomial rest;
        for (const auto& [v, e] : m.factors)
            if (subs.find(v) == subs.end()) rest.factors.push_back({v, e});
        // Every substituted variable contributes, including those the term
        // does not carry (exponent 0): value * common_den equals
        // num^{e + max_neg} * den^{max_pos - e}.
        for (auto& [v, info] : subs) {
            std::int64_t e = m.exponent_of(v);
            term = term * power_of(info.num_pows, info.rf->num(), e + info.max_neg);
            term = term * power_of(info.den_pows, info.rf->den(), info.max_pos - e);
        }
        numerator += term.mul_term(rest, Int(1));
    }
    return RationalFunction(std::move(numerator), std::move(common_den));
}

// ---------------------------------------------------------------------------
// FactorRing
// ---------------------------------------------------------------------------

namespace {

// Expands coeff * mono * prod atoms^e for integer coeff and non-negative
// exponents.
LaurentPoly expand_product(const FactorRing::Value& v,
                           const std::vector<LaurentPoly>& atoms) {
    Rat c = v.coeff;
    c.canonicalize();
    if (c.get_den() != 1) throw std::logic_error("expand_product: non-integer coefficient");
    LaurentPoly out(Monomial(v.mono), Int(c.get_num()));
    for (const auto& [id, e] : v.powers) {
        if (e < 0) throw std::logic_error("expand_product: negative exponent");
        out = out * atoms.at(static_cast<std::size_t>(id)).pow(e);
    }
    return out;
}

}  // namespace

FactorRing::Value FactorRing::from_poly(const LaurentPoly& p) {
    if (p.is_zero()) return zero();
    Value v = one();
    // Monomial part: per-variable minimum exponents.
    for (const auto& var : p.variables()) {
        std::int64_t lo = p.exponent_range(var)->first;
        if (lo != 0) v.mono = v.mono.mul(Monomial::single(var, lo));
    }
    LaurentPoly core;
    {
        Monomial inv = v.mono.inverse();
        for (const auto& [m, c] : p.terms()) core.add_term(m.mul(inv), c);
    }
    // Integer content and sign of the leading coefficient.
    Int g = 0;
    for (const auto& [m, c] : core.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (core.terms().rbegin()->second < 0) g = -g;
    v.coeff = Rat(g);
    if (g != 1) {
        LaurentPoly scaled;
        for (const auto& [m, c] : core.terms()) scaled.add_term(m, c / g);
        core = std::move(scaled);
    }
    if (core.is_one()) return v;
    // Peel off registered atoms.
    for (std::size_t id = 0; id < atoms_.size(); ++id) {
        LaurentPoly q;
        while (exact_divide(core, atoms_[id], q)) {
            core = q;
            ++v.powers[static_cast<int>(id)];
            if (core.is_one()) return v;
        }
        if (v.powers.count(static_cast<int>(id)) && v.powers[static_cast<int>(id)] == 0)
            v.powers.erase(static_cast<int>(id));
    }
    // Whatever is left becomes a new atom.
    atoms_.push_back(core);
    v.powers[static_cast<int>(atoms_.size() - 1)] = 1;
    return v;
}

FactorRing::Value FactorRing::mul(const Value& a, const Value& b) const {
    if (a.is_zero() || b.is_zero()) return zero();
    Value v;
    v.coeff = a.coeff * b.coeff;
    v.coeff.canonicalize();
    v.mono = a.mono.mul(b.mono);
    v.powers = a.powers;
    for (const auto& [id, e] : b.powers) {
        auto it = v.powers.find(id);
        if (it == v.powers.end()) {
            v.powers.emplace(id, e);
        } else {
            it->second += e;
            if (it->second == 0) v.powers.erase(it);
        }
    }
    return v;
}

FactorRing::Value FactorRing::div(const Value& a, const Value& b) const {
    if (b.is_zero()) throw std::invalid_argument("FactorRing::div: division by zero");
    return mul(a, pow(b, -1));
}

FactorRing::Value FactorRing::pow(const Value& a, std::int64_t k) const {
    if (a.is_zero()) {
        if (k > 0) return zero();
        throw std::invalid_argument("FactorRing::pow: zero to non-positive power");
    }
    Value v;
    v.coeff = Rat(1);
    for (std::int64_t i = 0; i < (k >= 0 ? k : -k); ++i) v.coeff *= a.coeff;
    if (k < 0) v.coeff = 1 / v.coeff;
    v.coeff.canonicalize();
    v.mono = a.mono.pow(k);
    for (const auto& [id, e] : a.powers)
        if (e * k != 0) v.powers.emplace(id, e * k);
    return v;
}

FactorRing::Value FactorRing::sub(const Value& a, const Value& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) {
        Value v = b;
        v.coeff = -v.coeff;
        return v;
    }
    // Common part g with positive rational coefficient.
    Value g = one();
    {
        Rat ca = a.coeff, cb = b.coeff;
        ca.canonicalize();
        cb.canonicalize();
        Int gn, dl;
        mpz_gcd(gn.get_mpz_t(), ca.get_num().get_mpz_t(), cb.get_num().get_mpz_t());
        mpz_lcm(dl.get_mpz_t(), ca.get_den().get_mpz_t(), cb.get_den().get_mpz_t());
        g.coeff = Rat(gn) / Rat(dl);
        g.coeff.canonicalize();
        std::set<VariableId> vars;
        for (const auto& [v, e] : a.mono.factors) vars.insert(v);
        for (const auto& [v, e] : b.mono.factors) vars.insert(v);
        for (const auto& v : vars) {
            std::int64_t lo = std::min(a.mono.exponent_of(v), b.mono.exponent_of(v));
            if (lo != 0) g.mono = g.mono.mul(Monomial::single(v, lo));
        }
        std::set<int> ids;
        for (const auto& [id, e] : a.powers) ids.insert(id);
        for (const auto& [id, e] : b.powers) ids.insert(id);
        for (int id : ids) {
            auto ea = a.powers.count(id) ? a.powers.at(id) : 0;
            auto eb = b.powers.count(id) ? b.powers.at(id) : 0;
            std::int64_t lo = std::min(ea, eb);
            if (lo != 0) g.powers.emplace(id, lo);
        }
    }
    LaurentPoly pa = expand_product(div(a, g), atoms_);
    LaurentPoly pb = expand_product(div(b, g), atoms_);
    LaurentPoly d = pa - pb;
    if (d.is_zero()) return zero();
    return mul(g, from_poly(d));
}

RationalFunction FactorRing::expand(const Value& v) const {
    if (v.is_zero()) return RationalFunction();
    Rat c = v.coeff;
    c.canonicalize();
    LaurentPoly num(v.mono, Int(c.get_num()));
    LaurentPoly den(Int(c.get_den()));
    for (const auto& [id, e] : v.powers) {
        const LaurentPoly& at = atoms_.at(static_cast<std::size_t>(id));
        if (e > 0)
            num = num * at.pow(e);
        else
            den = den * at.pow(-e);
    }
    return RationalFunction(std::move(num), std::move(den));
}

// ---------------------------------------------------------------------------
// series_invert
// ---------------------------------------------------------------------------

TruncatedSeries series_invert(const LaurentPoly& f, const VariableId& pivot, std::int64_t hi) {
    if (f.is_zero()) throw std::invalid_argument("series_invert: zero series");
    auto range = f.exponent_range(pivot).value();
    std::int64_t fmin = range.first;

    // Pivot-minimal slice must be a single +-1 monomial.
    LaurentPoly slice = f.truncated(pivot, fmin, fmin);
    if (slice.term_count() != 1)
        throw std::invalid_argument("series_invert: pivot-minimal slice is not a monomial");
    const auto& [lead_m, lead_c] = *slice.terms().begin();
    if (lead_c != 1 && lead_c != -1)
        throw std::invalid_argument("series_invert: leading coefficient is not +-1");

    LaurentPoly g0(lead_m.inverse(), lead_c);  // lead_c^{-1} == lead_c for +-1
    // h = 1 - f*g0 has pivot exponents >= 1.
    LaurentPoly h = LaurentPoly::one() - f * g0;

    std::int64_t series_deg = hi + fmin;  // needed pivot degree of sum_{t} h^t
    LaurentPoly acc = LaurentPoly::one();
    LaurentPoly powh = LaurentPoly::one();
    for (std::int64_t t = 1; t <= series_deg; ++t) {
        powh = (powh * h).truncated(pivot, 0, series_deg);
        if (powh.is_zero()) break;
        acc += powh;
    }
    TruncatedSeries out;
    out.pivot = pivot;
    out.hi = hi;
    out.terms = (g0 * acc).truncated(pivot, std::numeric_limits<std::int64_t>::min() / 2, hi);

    LaurentPoly check = f * out.terms - LaurentPoly::one();
    auto bad = check.truncated(pivot, std::numeric_limits<std::int64_t>::min() / 2, hi + fmin);
    if (!bad.is_zero()) throw std::logic_error("series_invert: self-check failed");
    return out;
}

}  // namespace frs
