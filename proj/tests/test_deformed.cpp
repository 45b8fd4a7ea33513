#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frs/deformed.hpp"

using namespace frs;

namespace {
LaurentPoly U(int a, std::int64_t e = 1) { return LaurentPoly::variable(var_u(a), e); }
LaurentPoly Ui(int a, int i, std::int64_t e = 1) { return LaurentPoly::variable(var_ui(a, i), e); }
LaurentPoly Av(int i, std::int64_t e = 1) { return LaurentPoly::variable(var_a(i), e); }
}  // namespace

TEST_CASE("rank-1 hand values") {
    DeformedQTable t(build_algebra("A1"));
    CHECK(t.entry(1, 0).equals(RationalFunction(LaurentPoly::one())));
    CHECK(t.entry(1, 1).equals(RationalFunction(U(1, -1))));
    CHECK(t.entry(1, 2).equals(RationalFunction((U(1, -2) - LaurentPoly(1)) * Ui(1, 1, -1))));
    // the defining quadratic relation at the next level
    RationalFunction lhs = t.entry(1, 2) * t.entry(1, 2) - RationalFunction(LaurentPoly::one());
    RationalFunction rhs = t.entry(1, 3) * t.entry(1, 1) * RationalFunction(Ui(1, 2));
    CHECK(lhs.equals(rhs));
    // the 4th entry is a genuine rational function: its denominator is not
    // a monomial (it contains the numerator of the 2nd entry)
    CHECK(t.entry(1, 4).den().term_count() > 1);
}

TEST_CASE("B2 edge terms carry the bookkeeping variable on odd levels only") {
    DeformedQTable t(build_algebra("B2"));
    CHECK(t.edge_term(2, 1, 1).equals(RationalFunction(Av(1) * U(1, -1))));
    CHECK(t.edge_term(2, 1, 2).equals(RationalFunction(U(1, -2))));
    CHECK(t.edge_term(1, 2, 1).equals(t.entry(2, 2)));
    for (int i = 1; i <= 3; ++i) {
        CHECK(t.edge_term(2, 1, i).equals(t.edge_term_explicit(2, 1, i)));
        CHECK(t.edge_term(1, 2, i).equals(t.edge_term_explicit(1, 2, i)));
    }
}

TEST_CASE("explicit edge catalogs agree with the uniform formula") {
    for (const char* alg : {"A2", "B3", "C3", "F4", "G2"}) {
        AlgebraSpec g = build_algebra(alg);
        DeformedQTable t(g);
        for (int a = 1; a <= g.rank; ++a)
            for (int b : g.neighbors(a))
                for (int i = 1; i <= (g.t_max == 3 ? 2 : (g.rank >= 4 ? 2 : 3)); ++i) {
                    INFO(std::string(alg) << " edge " << a << "-" << b << " level " << i);
                    CHECK(t.edge_catalog_matches(a, b, i));
                }
    }
}

TEST_CASE("table entries build for every family") {
    for (const char* alg : {"A1", "A2", "A3", "B2", "C2", "D4", "G2"}) {
        AlgebraSpec g = build_algebra(alg);
        DeformedQTable t(g);
        for (int a = 1; a <= g.rank; ++a) {
            INFO(std::string(alg) << " node " << a);
            CHECK_NOTHROW(t.entry(a, g.t_of(a) * 2 + 1));
        }
    }
}

TEST_CASE("shift self-similarity") {
    {
        DeformedQTable t(build_algebra("A1"));
        std::string why;
        CHECK_MESSAGE(verify_shift_recursion(t, 1, 5, &why), why);
        CHECK_MESSAGE(verify_shift_recursion(t, 2, 5, &why), why);
    }
    for (const char* alg : {"A2", "B2", "C2"}) {
        DeformedQTable t(build_algebra(alg));
        std::string why;
        CHECK_MESSAGE(verify_shift_recursion(t, 1, 2, &why), (std::string(alg) + ": " + why));
    }
    {
        DeformedQTable t(build_algebra("G2"));
        std::string why;
        CHECK_MESSAGE(verify_shift_recursion(t, 1, 2, &why), why);
    }
}

TEST_CASE("table rebuilds from seeds with the one-step shift alone") {
    std::string why;
    CHECK_MESSAGE(verify_shift_rebuild(build_algebra("A1"), 5, &why), why);
    CHECK_MESSAGE(verify_shift_rebuild(build_algebra("A2"), 3, &why), why);
    CHECK_MESSAGE(verify_shift_rebuild(build_algebra("B2"), 2, &why), why);
}

TEST_CASE("evaluation maps collapse onto the classical table") {
    for (const char* alg : {"A1", "A2", "B2", "G2"}) {
        AlgebraSpec g = build_algebra(alg);
        DeformedQTable t(g);
        QSystemTable classical(g);
        std::string why;
        CHECK_MESSAGE(verify_phi_collapse(t, classical, 1, 0, &why), (std::string(alg) + ": " + why));
        if (!g.simply_laced()) {
            CHECK_MESSAGE(verify_phi_collapse(t, classical, 0, 1, &why),
                          (std::string(alg) + ": " + why));
            CHECK_MESSAGE(verify_phi_collapse(t, classical, 1, 1, &why),
                          (std::string(alg) + ": " + why));
        }
    }
}

TEST_CASE("full evaluation forgets every level and bookkeeping variable") {
    AlgebraSpec g = build_algebra("B2");
    DeformedQTable t(g);
    PhiSpec full{0, 0, true};
    RationalFunction e = evaluate_phi(g, full, t.entry(2, 3));
    for (const auto& v : e.num().variables()) CHECK(v.kind == VarKind::U);
    for (const auto& v : e.den().variables()) CHECK(v.kind == VarKind::U);
}
