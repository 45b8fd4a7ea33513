#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frs/qsystem.hpp"

using namespace frs;

namespace {
LaurentPoly T(int a, std::int64_t e = 1) { return LaurentPoly::variable(var_t(a), e); }
}  // namespace

TEST_CASE("rank-1 table is the three-term family") {
    CHECK(chebyshev_check(8));
    CHECK(rank1_three_term(2) == T(1) * T(1) - LaurentPoly(1));
    CHECK(rank1_three_term(3) == T(1) * T(1) * T(1) - LaurentPoly(2) * T(1));
}

TEST_CASE("A2 hand values") {
    QSystemTable t(build_algebra("A2"));
    CHECK(t.entry(1, 2) == T(1) * T(1) - T(2));
    CHECK(t.entry(2, 2) == T(2) * T(2) - T(1));
}

TEST_CASE("B2 hand values across the doubled edge") {
    QSystemTable t(build_algebra("B2"));
    CHECK(t.entry(2, 2) == T(2) * T(2) - T(1));
    CHECK(t.entry(1, 2) == T(1) * T(1) - T(2) * T(2) + T(1));
    CHECK(t.entry(2, 3) == T(2, 3) - LaurentPoly(2) * T(1) * T(2));
}

TEST_CASE("edge terms match the explicit catalog") {
    for (const char* alg : {"A3", "B2", "B3", "C3", "D4", "F4", "G2"}) {
        AlgebraSpec g = build_algebra(alg);
        QSystemTable t(g);
        int depth = g.t_max == 3 ? 2 : 3;
        for (int a = 1; a <= g.rank; ++a)
            for (int b : g.neighbors(a))
                for (int j = 1; j <= g.t_of(a) * depth; ++j) {
                    INFO(std::string(alg) << " edge " << a << "-" << b << " level " << j);
                    CHECK(t.t_term(a, b, j) == t.t_term_explicit(a, b, j));
                }
    }
}

TEST_CASE("demand-driven solve crosses scaled levels (G2 regression)") {
    QSystemTable t(build_algebra("G2"));
    // Level 5 on the short node pulls in Q_{1,2} (scaled level 2) through the
    // tripled edge; a strict scaled-level sweep would deadlock here.
    CHECK_NOTHROW(t.entry(2, 5));
    CHECK_FALSE(t.entry(2, 5).is_zero());
}

TEST_CASE("polynomiality at moderate depth") {
    for (const char* alg : {"A2", "B2", "C2", "G2"}) {
        AlgebraSpec g = build_algebra(alg);
        CHECK_NOTHROW(solve_q_system(g, 3));
    }
}

TEST_CASE("entries stay in the plain polynomial ring") {
    QSystemTable t(build_algebra("G2"));
    for (int a = 1; a <= 2; ++a)
        for (int j = 0; j <= t.algebra().t_of(a) * 2; ++j)
            for (const auto& [m, c] : t.entry(a, j).terms())
                for (const auto& [v, e] : m.factors) CHECK(e > 0);
}
