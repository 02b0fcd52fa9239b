#include <catch_amalgamated.hpp>

#include "hadamard/bounds.hpp"
#include "hadamard/core.hpp"

#include <cmath>
#include <numbers>

using namespace hadamard;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const Rectangle unit = Rectangle::unit();
const Rectangle wide(-1, 2, 0, 3);

const char* const identity_corpus[] = {
    "x*y", "x^2*y^2", "x^3+y^3+x^2*y^2", "exp(x+y)", "sin(x)*sin(y)", "(x+2*y)^4",
};

} // namespace

TEST_CASE("corner average and center value") {
    CHECK(corner_average(parse("x*y"), unit) == 0.25);
    CHECK(corner_average(parse("7"), wide) == 7.0);
    CHECK(corner_average(parse("x^2+y^2"), unit) == 1.0);
    CHECK(center_value(parse("x*y"), unit) == 0.25);
    CHECK(center_value(parse("x^2+y^2"), unit) == 0.5);
    CHECK(center_value(parse("x+y"), Rectangle(0, 2, 0, 2)) == 2.0);
}

TEST_CASE("chain terms against closed forms") {
    const Expression sq = parse("x^2+y^2");
    const Expression xy = parse("x*y");
    const Expression k = parse("3.5");
    CHECK_THAT(midline_term(sq, unit), WithinAbs(7.0 / 12.0, 1e-14));
    CHECK_THAT(midline_term(xy, unit), WithinAbs(0.25, 1e-14));
    CHECK_THAT(midline_term(k, wide), WithinAbs(3.5, 1e-14));
    CHECK_THAT(integral_mean(sq, unit), WithinAbs(2.0 / 3.0, 1e-14));
    CHECK_THAT(integral_mean(xy, unit), WithinAbs(0.25, 1e-14));
    CHECK_THAT(integral_mean(k, wide), WithinAbs(3.5, 1e-14));
    CHECK_THAT(edge_mean_term(sq, unit), WithinAbs(5.0 / 6.0, 1e-14));
    CHECK_THAT(edge_mean_term(xy, unit), WithinAbs(0.25, 1e-14));
    CHECK_THAT(edge_mean_term(k, wide), WithinAbs(3.5, 1e-14));
}

TEST_CASE("functional A") {
    CHECK_THAT(functional_A(parse("x*y"), unit), WithinAbs(0.5, 1e-14));
    CHECK_THAT(functional_A(parse("2.25"), wide), WithinAbs(4.5, 1e-14));
    CHECK_THAT(functional_A(parse("x^2*y^2"), unit), WithinAbs(1.0 / 3.0, 1e-14));
    for (const char* text : identity_corpus) {
        const Expression f = parse(text);
        for (const Rectangle& r : {unit, wide}) {
            const EdgeIntegrals e = edge_integrals(f, r);
            const double A = functional_A(e, r.width(), r.height());
            const double L4 = edge_mean_term(e, r.width(), r.height());
            CHECK(std::fabs(A - 2.0 * L4) <= 1e-12 * std::max(1.0, std::fabs(A)));
        }
    }
}

TEST_CASE("chain report") {
    SECTION("x^2 + y^2 on the unit square") {
        const ChainReport r = chain(parse("x^2+y^2"), unit);
        const std::array<double, 5> expected{0.5, 7.0 / 12.0, 2.0 / 3.0, 5.0 / 6.0, 1.0};
        for (std::size_t i = 0; i < 5; ++i) CHECK_THAT(r.values()[i], WithinAbs(expected[i], 1e-12));
        CHECK(r.all_hold());
    }
    SECTION("affine functions give five equal values") {
        const ChainReport r = chain(parse("2*x - 3*y + 0.5"), wide);
        for (double v : r.values()) CHECK_THAT(v, WithinAbs(r.center, 1e-12));
        CHECK(r.all_hold());
    }
    SECTION("x*y is an equality case too") {
        const ChainReport r = chain(parse("x*y"), unit);
        for (double v : r.values()) CHECK_THAT(v, WithinAbs(0.25, 1e-14));
        CHECK(r.all_hold());
    }
    SECTION("a concave function breaks the links") {
        const ChainReport r = chain(parse("-x^2-y^2"), unit);
        for (const auto& link : r.links) CHECK_FALSE(link.holds);
    }
}

TEST_CASE("identity sides") {
    CHECK_THAT(identity_lhs(parse("x*y"), unit), WithinAbs(0.0, 1e-14));
    CHECK_THAT(identity_lhs(parse("x - 4*y + 1"), wide), WithinAbs(0.0, 1e-13));
    CHECK_THAT(identity_lhs(parse("x^2*y^2"), unit), WithinAbs(1.0 / 36.0, 1e-14));
    CHECK_THAT(identity_rhs(parse("x*y"), unit), WithinAbs(0.0, 1e-15));
    CHECK_THAT(identity_rhs(parse("x^2*y^2"), unit), WithinAbs(1.0 / 36.0, 1e-14));
    // hand computation: corners 45/4, mean 3, A = 12
    CHECK_THAT(identity_lhs(parse("x^2*y^2"), wide), WithinAbs(2.25, 1e-12));
    CHECK_THAT(identity_rhs(parse("x^2*y^2"), wide), WithinAbs(2.25, 1e-12));

    for (const char* text : identity_corpus) {
        const Expression f = parse(text);
        for (const Rectangle& r : {unit, wide}) {
            const double lhs = identity_lhs(f, r);
            const double rhs = identity_rhs(f, r);
            INFO(text << " on [" << r.a() << "," << r.b() << "]x[" << r.c() << "," << r.d() << "]");
            CHECK(std::fabs(lhs - rhs) <= 1e-8 * (1.0 + std::fabs(lhs)));
        }
    }
}

TEST_CASE("corner-derivative bounds on x^2 y^2") {
    const Expression f = parse("x^2*y^2");
    const auto corners = corner_derivatives(f, unit);
    CHECK(corners == std::array<double, 4>{0.0, 0.0, 0.0, 4.0});
    CHECK_THAT(bound_thm21(f, unit), WithinAbs(1.0 / 16.0, 1e-15));
    CHECK_THAT(bound_thm22(f, unit, 2.0), WithinAbs(1.0 / 6.0, 1e-15));
    CHECK_THAT(bound_thm23(f, unit, 2.0), WithinAbs(1.0 / 8.0, 1e-15));
    CHECK(bound_thm23(f, unit, 1.0) == bound_thm21(f, unit));
}

TEST_CASE("corner-derivative bounds on simple functions") {
    CHECK_THAT(bound_thm21(parse("x*y"), unit), WithinAbs(1.0 / 16.0, 1e-15));
    CHECK_THAT(bound_thm22(parse("x*y"), unit, 2.0), WithinAbs(1.0 / 12.0, 1e-15));
    for (double p : {1.5, 2.0, 7.0}) CHECK(bound_thm22(parse("x+y"), wide, p) == 0.0);
    CHECK(bound_thm21(parse("3*x - y"), wide) == 0.0);
    CHECK(bound_thm23(parse("3*x - y"), wide, 4.0) == 0.0);
}

TEST_CASE("exponent preconditions") {
    const Expression f = parse("x*y");
    CHECK_THROWS_AS(bound_thm22(f, unit, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bound_thm22(f, unit, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(bound_thm23(f, unit, 0.99), std::invalid_argument);
    CHECK_NOTHROW(bound_thm23(f, unit, 1.0));
    CHECK_THAT(conjugate_exponent(3.0), WithinAbs(1.5, 1e-15));
}

TEST_CASE("holder coefficient lies strictly between 1/4 and 1") {
    for (double p : {1.0 + 1e-9, 1.1, 1.5, 2.0, 3.0, 10.0, 1e6}) {
        const double c = holder_coefficient(p);
        INFO("p = " << p);
        CHECK(c > 0.25);
        CHECK(c < 1.0);
    }
    CHECK_THAT(holder_coefficient(2.0), WithinAbs(1.0 / 3.0, 1e-15));
    CHECK_THAT(holder_coefficient(1.0 + 1e-9), WithinAbs(0.25, 1e-8));
    CHECK(holder_coefficient(1e6) > 0.9999);
}

TEST_CASE("power-mean bound is tighter than the Hoelder bound") {
    for (const char* text : identity_corpus) {
        const Expression f = parse(text);
        for (double p : {1.1, 1.5, 2.0, 3.0, 10.0}) {
            const double q = conjugate_exponent(p);
            INFO(text << " p = " << p);
            CHECK(bound_thm23(f, wide, q) < bound_thm22(f, wide, p));
        }
    }
}

TEST_CASE("verify_bounds") {
    SECTION("x^2 y^2") {
        const BoundReport r = verify_bounds(parse("x^2*y^2"), unit, {}, {2.0});
        CHECK_THAT(r.lhs_abs, WithinAbs(1.0 / 36.0, 1e-12));
        CHECK_THAT(r.bound21, WithinAbs(1.0 / 16.0, 1e-15));
        REQUIRE(r.holder.size() == 1);
        CHECK(r.holder[0].q == 2.0);
        CHECK_THAT(r.holder[0].bound22, WithinAbs(1.0 / 6.0, 1e-15));
        CHECK_THAT(r.holder[0].bound23, WithinAbs(1.0 / 8.0, 1e-15));
        CHECK(r.bound21_holds);
        CHECK(r.holder[0].ordering_holds);
        CHECK(r.all_hypotheses_passed());
        CHECK_FALSE(r.any_violation());
    }
    SECTION("affine") {
        const BoundReport r = verify_bounds(parse("x + 2*y - 1"), unit, {}, {2.0});
        CHECK_THAT(r.lhs_abs, WithinAbs(0.0, 1e-14));
        CHECK(r.bound21 == 0.0);
        CHECK(r.holder[0].bound22 == 0.0);
        CHECK(r.holder[0].bound23 == 0.0);
        CHECK(r.holder[0].ordering_holds);
        CHECK_FALSE(r.any_violation());
    }
    SECTION("exp(x+y)") {
        const BoundReport r = verify_bounds(parse("exp(x+y)"), unit, {}, {1.5, 2.0, 3.0});
        const double e = std::numbers::e;
        CHECK_THAT(r.corner_derivatives[3], WithinRel(e * e, 1e-15));
        CHECK(r.bound21_holds);
        for (const auto& h : r.holder) {
            CHECK(h.bound22_holds);
            CHECK(h.bound23_holds);
            CHECK(h.ordering_holds);
            CHECK(h.bound23 < h.bound22);
        }
        CHECK(r.all_hypotheses_passed());
    }
}
