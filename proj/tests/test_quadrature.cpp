#include <catch_amalgamated.hpp>

#include "hadamard/quadrature.hpp"
#include "support/poly_oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hadamard;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("rectangle rejects degenerate bounds") {
    CHECK_THROWS_AS(Rectangle(1, 1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(Rectangle(0, 1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(Rectangle(0, NAN, 0, 1), std::invalid_argument);
    const Rectangle r(-1, 2, 0, 3);
    CHECK(r.area() == 9.0);
    CHECK(r.center_x() == 0.5);
}

TEST_CASE("quadrature spec defaults and validation") {
    const QuadratureSpec spec;
    CHECK(spec.panels_1d == 64);
    CHECK(spec.panels_2d_per_axis == 64);
    CHECK(spec.nodes_per_panel == 8);
    QuadratureSpec bad;
    bad.nodes_per_panel = 0;
    CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, 0, 1, bad), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre rules") {
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 16u}) {
        const auto rule = gauss_legendre(n);
        double w = 0.0;
        for (double v : rule.weights) w += v;
        CHECK_THAT(w, WithinAbs(2.0, 1e-14));
        for (std::size_t i = 1; i < n; ++i) CHECK(rule.nodes[i - 1] < rule.nodes[i]);
    }
    const auto two = gauss_legendre(2);
    CHECK_THAT(two.nodes[1], WithinAbs(1.0 / std::sqrt(3.0), 1e-16));
}

TEST_CASE("integrate_1d examples") {
    CHECK_THAT(integrate_1d([](double x) { return x * x; }, 0, 1), WithinAbs(1.0 / 3.0, 1e-15));
    CHECK_THAT(integrate_1d([](double) { return 1.0; }, 2, 5), WithinAbs(3.0, 1e-14));
    CHECK_THAT(integrate_1d([](double x) { return std::exp(x); }, 0, 1), WithinAbs(std::numbers::e - 1.0, 1e-12));
    CHECK_THROWS_AS(integrate_1d([](double x) { return x; }, 1, 1), std::invalid_argument);
}

TEST_CASE("integrate_1d propagates domain errors with the abscissa") {
    const Expression f = parse("log(x)");
    try {
        integrate_1d([&](double x) { return f(x - 0.5, 0.0); }, 0.0, 1.0);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("abscissa") != std::string::npos);
        CHECK(e.subterm() == "log(x)");
    }
}

TEST_CASE("integrate_2d examples") {
    CHECK_THAT(integrate_2d(parse("x*y"), Rectangle::unit()), WithinAbs(0.25, 1e-14));
    CHECK_THAT(integrate_2d(parse("1"), Rectangle(-1, 2, 0.5, 3)), WithinRel(7.5, 1e-14));
    CHECK_THAT(integrate_2d(parse("x^2+y^2"), Rectangle::unit()), WithinAbs(2.0 / 3.0, 1e-14));
}

TEST_CASE("tensor rule is exact for degree <= 15 per axis") {
    QuadratureSpec coarse;
    coarse.panels_2d_per_axis = 2;
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> power(0, 15);
    for (int trial = 0; trial < 30; ++trial) {
        oracle::Polynomial p;
        for (int k = 0; k < 4; ++k) p.terms.push_back({1.0 + k, power(rng), power(rng)});
        const double exact = p.integral(-1.0, 2.0, 0.0, 1.5);
        const double got = integrate_2d(parse(p.to_text()), Rectangle(-1, 2, 0, 1.5), coarse);
        INFO(p.to_text());
        CHECK_THAT(got, WithinRel(exact, 1e-12));
    }
}

TEST_CASE("refinement changes smooth results by less than 1e-10") {
    QuadratureSpec doubled;
    doubled.panels_1d = doubled.panels_2d_per_axis = 128;
    for (const char* text : {"exp(x+y)", "sin(x)*sin(y)", "(x+2*y)^4", "log(4 + x*y)"}) {
        const Expression f = parse(text);
        const Rectangle r(-1, 2, 0, 3);
        INFO(text);
        const double base = integrate_2d(f, r);
        CHECK(std::fabs(integrate_2d(f, r, doubled) - base) < 1e-10 * std::max(1.0, std::fabs(base)));
        const double k = kernel_integral(f, r);
        CHECK(std::fabs(kernel_integral(f, r, doubled) - k) < 1e-10 * std::max(1.0, std::fabs(k)));
    }
}

TEST_CASE("kernel integral examples") {
    CHECK_THAT(kernel_integral(parse("x*y"), Rectangle::unit()), WithinAbs(0.0, 1e-15));
    CHECK_THAT(kernel_integral(parse("x^2*y^2"), Rectangle::unit()), WithinAbs(1.0 / 9.0, 1e-14));
    CHECK(kernel_integral(parse("x + 2*y + 3"), Rectangle::unit()) == 0.0);
    // f_xy = 4xy with x = 2 - 3t, y = 3 - 3s: each factor integrates to 1/2 against (1 - 2t)
    CHECK_THAT(kernel_integral(parse("x^2*y^2"), Rectangle(-1, 2, 0, 3)), WithinAbs(1.0, 1e-13));
}

TEST_CASE("integration is bit-for-bit deterministic") {
    const Expression f = parse("exp(sin(3*x*y)) + x^3");
    const Rectangle r(-0.5, 1.25, 0.1, 2.0);
    const double first = integrate_2d(f, r);
    for (int i = 0; i < 3; ++i) CHECK(integrate_2d(f, r) == first);
    const double k = kernel_integral(f, r);
    CHECK(kernel_integral(f, r) == k);
}

TEST_CASE("compensated and pairwise sums") {
    CompensatedSum s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1.0);
    const std::vector<double> v(1000, 0.1);
    CHECK_THAT(pairwise_sum(v), WithinAbs(100.0, 1e-12));
    CHECK(pairwise_sum({}) == 0.0);
}
