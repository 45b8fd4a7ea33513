#pragma once

// Exact sparse Laurent-polynomial arithmetic over arbitrary-precision
// integers, plus the handful of numeric helpers the rest of the library
// needs: signed-argument binomial coefficients, exact polynomial division
// with a termination certificate, rational functions compared by
// cross-multiplication, and windowed series inversion.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace frs {

using Int = mpz_class;
using Rat = mpq_class;

// ---------------------------------------------------------------------------
// Variables
// ---------------------------------------------------------------------------

enum class VarKind : std::uint8_t {
    U = 0,   // u_alpha        (one per node)
    Ui = 1,  // u_{alpha,i}    (node x positive level)
    A = 2,   // a_i            (positive level only)
    T = 3,   // t_alpha        (classical Q-system variable)
    X = 4,   // x_alpha        (character-ring coordinate)
};

struct VariableId {
    VarKind kind = VarKind::U;
    std::int32_t node = 0;   // 1-based node index; 0 for kind A
    std::int32_t level = 0;  // 1-based level for Ui / A; 0 otherwise

    friend bool operator==(const VariableId& a, const VariableId& b) {
        return a.kind == b.kind && a.node == b.node && a.level == b.level;
    }
    friend bool operator!=(const VariableId& a, const VariableId& b) { return !(a == b); }
    friend bool operator<(const VariableId& a, const VariableId& b) {
        return std::tuple(static_cast<int>(a.kind), a.node, a.level) <
               std::tuple(static_cast<int>(b.kind), b.node, b.level);
    }

    std::string str() const;
};

inline VariableId var_u(int node) { return {VarKind::U, node, 0}; }
inline VariableId var_ui(int node, int level) { return {VarKind::Ui, node, level}; }
inline VariableId var_a(int level) { return {VarKind::A, 0, level}; }
inline VariableId var_t(int node) { return {VarKind::T, node, 0}; }
inline VariableId var_x(int node) { return {VarKind::X, node, 0}; }

// ---------------------------------------------------------------------------
// Monomials: sorted sparse exponent vectors.  The monomial order compares
// exponents variable-by-variable in increasing variable order (missing
// variables count as exponent 0); the first difference decides, larger
// exponent first.  The order is total and translation-invariant
// (m1 < m2  =>  m1*c < m2*c), which is what exact division relies on.
// ---------------------------------------------------------------------------

struct Monomial {
    // Invariant: sorted by variable, no zero exponents.
    std::vector<std::pair<VariableId, std::int64_t>> factors;

    static Monomial one() { return {}; }
    static Monomial single(VariableId v, std::int64_t e) {
        Monomial m;
        if (e != 0) m.factors.push_back({v, e});
        return m;
    }

    bool is_one() const { return factors.empty(); }
    std::int64_t exponent_of(const VariableId& v) const;

    Monomial mul(const Monomial& o) const;
    Monomial div(const Monomial& o) const;  // exponent subtraction (Laurent)
    Monomial pow(std::int64_t k) const;
    Monomial inverse() const { return pow(-1); }

    // Three-way comparison in the monomial order described above.
    static int cmp(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors == b.factors; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    std::string str() const;
};

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::cmp(a, b) < 0; }
};

// ---------------------------------------------------------------------------
// Laurent polynomials
// ---------------------------------------------------------------------------

class LaurentPoly {
  public:
    using TermMap = std::map<Monomial, Int, MonomialLess>;

    LaurentPoly() = default;
    explicit LaurentPoly(const Int& c) { add_term(Monomial::one(), c); }
    explicit LaurentPoly(long c) : LaurentPoly(Int(c)) {}
    LaurentPoly(const Monomial& m, const Int& c) { add_term(m, c); }

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return LaurentPoly(Int(1)); }
    static LaurentPoly variable(VariableId v, std::int64_t e = 1) {
        return LaurentPoly(Monomial::single(v, e), Int(1));
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const Monomial& m, const Int& c);
    Int coefficient(const Monomial& m) const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    LaurentPoly operator-() const;
    LaurentPoly mul_term(const Monomial& m, const Int& c) const;
    LaurentPoly pow(std::int64_t k) const;  // k >= 0

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    // Per-variable exponent range over all terms; nullopt for the zero
    // polynomial.  Variables absent from a term count as exponent 0, so the
    // range always contains 0 unless every term carries the variable.
    std::optional<std::pair<std::int64_t, std::int64_t>> exponent_range(const VariableId& v) const;
    std::vector<VariableId> variables() const;

    // Keep only terms whose exponent of v lies in [lo, hi].
    LaurentPoly truncated(const VariableId& v, std::int64_t lo, std::int64_t hi) const;
    // Drop the given variables from every term (specialize them to 1).
    LaurentPoly set_to_one(const std::function<bool(const VariableId&)>& pred) const;

    std::string str() const;

  private:
    TermMap terms_;
};

// C(m + p, m) for m >= 0 and arbitrary (signed) integer p:
// (p+m)(p+m-1)...(p+1) / m!.  Exact; signed p yields signed results.
Int extended_binomial(long m, const Int& p);

// Exact division in the Laurent-polynomial ring.  Returns true and fills
// `quotient` iff b divides a exactly.  Termination is guaranteed by confining
// candidate quotient monomials to the per-variable exponent box
//   [min_v(a) - min_v(b), max_v(a) - max_v(b)]
// which must contain the quotient's exponents whenever a = q*b (the extreme
// slices of a product are products of extreme slices).
bool exact_divide(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& quotient);

// ---------------------------------------------------------------------------
// Rational functions.  Kept unreduced apart from cheap canonicalization
// (integer content, common monomial factor, denominator sign); equality is
// decided by cross-multiplication, which is exact.
// ---------------------------------------------------------------------------

class RationalFunction {
  public:
    RationalFunction() : num_(LaurentPoly::zero()), den_(LaurentPoly::one()) {}
    explicit RationalFunction(LaurentPoly num) : num_(std::move(num)), den_(LaurentPoly::one()) {}
    RationalFunction(LaurentPoly num, LaurentPoly den);

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction inverse() const;
    RationalFunction pow(std::int64_t k) const;  // any sign

    bool equals(const RationalFunction& o) const;  // cross-multiplication

    std::string str() const;

  private:
    void normalize();
    LaurentPoly num_, den_;
};

// Substitute rational functions for variables.  `image` returns nullptr for
// variables that are left alone.  Computed over a single common denominator
// so intermediate rational sums never appear.
RationalFunction substitute(const LaurentPoly& p,
                            const std::function<const RationalFunction*(const VariableId&)>& image);

// ---------------------------------------------------------------------------
// Factored arithmetic: values are kept as  coeff * monomial * prod atom_i^e_i
// over a growing registry of polynomial atoms.  Multiplication and division
// are exponent bookkeeping; subtraction expands the non-common part, then
// refactors the difference against the registry (new leftovers become new
// atoms).  This keeps the quadratic-table recursions polynomial-sized where
// plain rational arithmetic would grow without bound.
// ---------------------------------------------------------------------------

class FactorRing {
  public:
    struct Value {
        Rat coeff;                               // 0 iff the value is zero
        Monomial mono;                           // unit (Laurent monomial) part
        std::map<int, std::int64_t> powers;      // atom id -> nonzero exponent
        bool is_zero() const { return coeff == 0; }
    };

    Value zero() const { return Value{Rat(0), Monomial::one(), {}}; }
    Value one() const { return Value{Rat(1), Monomial::one(), {}}; }
    Value from_poly(const LaurentPoly& p);

    Value mul(const Value& a, const Value& b) const;
    Value div(const Value& a, const Value& b) const;
    Value pow(const Value& a, std::int64_t k) const;
    Value sub(const Value& a, const Value& b);

    // Expansion into an honest rational function (positive exponents to the
    // numerator, negative to the denominator).
    RationalFunction expand(const Value& v) const;

    const LaurentPoly& atom(int id) const { return atoms_.at(static_cast<std::size_t>(id)); }
    std::size_t atom_count() const { return atoms_.size(); }

  private:
    std::vector<LaurentPoly> atoms_;
};

// ---------------------------------------------------------------------------
// Windowed series inversion.  Interprets f as a Laurent series ascending in
// the pivot variable; requires the pivot-minimal slice of f to be a single
// term with coefficient +-1.  Returns g with pivot exponents <= hi such that
// every term of f*g - 1 has pivot exponent > hi + (minimal pivot exponent
// of f); the function self-checks this before returning.
// ---------------------------------------------------------------------------

struct TruncatedSeries {
    VariableId pivot;
    std::int64_t hi = 0;  // retained pivot exponents are <= hi
    LaurentPoly terms;
};

TruncatedSeries series_invert(const LaurentPoly& f, const VariableId& pivot, std::int64_t hi);

}  // namespace frs
