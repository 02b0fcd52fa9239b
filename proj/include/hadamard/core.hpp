#pragma once

/**
 * @file core.hpp
 * @brief Terms of the rectangle Hermite-Hadamard chain, the corner/edge/mean
 *        identity and its three corner-derivative error bounds.
 *
 * Notation used throughout, for f on R = [a,b] x [c,d]:
 *
 *   corner average  C = (f(a,c) + f(a,d) + f(b,c) + f(b,d)) / 4
 *   integral mean   M = (1/|R|) * double integral of f over R
 *   edge functional A = (1/2) [ (1/(b-a)) int_a^b (f(x,c) + f(x,d)) dx
 *                             + (1/(d-c)) int_c^d (f(a,y) + f(b,y)) dy ]
 *
 * The identity C + M - A = (|R|/4) * int_0^1 int_0^1 (1-2t)(1-2s) f_xy(...) dt ds
 * holds for every f with an integrable mixed partial, and bounding its right
 * side through corner values of |f_xy| gives the three error bounds.
 */

#include "hadamard/expr.hpp"
#include "hadamard/quadrature.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hadamard {

/// Default relative slack for inequality verdicts between quadrature results.
inline constexpr double chain_slack = 1e-9;

struct LinkVerdict {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = false;
};

/// The five chain values, center to corners, plus one verdict per link.
struct ChainReport {
    double center = 0.0;        // L1
    double midline_mean = 0.0;  // L2
    double integral_mean = 0.0; // L3
    double edge_mean = 0.0;     // L4
    double corner_mean = 0.0;   // L5
    std::array<LinkVerdict, 4> links{};

    std::array<double, 5> values() const { return {center, midline_mean, integral_mean, edge_mean, corner_mean}; }
    bool all_hold() const {
        for (const auto& l : links) {
            if (!l.holds) return false;
        }
        return true;
    }
};

/// Integrals of f along the four sides of a rectangle.
struct EdgeIntegrals {
    double bottom = 0.0; // y = c
    double top = 0.0;    // y = d
    double left = 0.0;   // x = a
    double right = 0.0;  // x = b
};

inline EdgeIntegrals edge_integrals(const Expression& f, const Rectangle& rect, const QuadratureSpec& spec = {}) {
    EdgeIntegrals e;
    e.bottom = integrate_1d([&](double x) { return f(x, rect.c()); }, rect.a(), rect.b(), spec);
    e.top = integrate_1d([&](double x) { return f(x, rect.d()); }, rect.a(), rect.b(), spec);
    e.left = integrate_1d([&](double y) { return f(rect.a(), y); }, rect.c(), rect.d(), spec);
    e.right = integrate_1d([&](double y) { return f(rect.b(), y); }, rect.c(), rect.d(), spec);
    return e;
}

/// A from precomputed edge integrals.
inline double functional_A(const EdgeIntegrals& e, double width, double height) {
    return 0.5 * ((e.bottom + e.top) / width + (e.left + e.right) / height);
}

inline double corner_average(const Expression& f, const Rectangle& rect) {
    return (f(rect.a(), rect.c()) + f(rect.a(), rect.d()) + f(rect.b(), rect.c()) + f(rect.b(), rect.d())) / 4.0;
}

inline double center_value(const Expression& f, const Rectangle& rect) {
    return f(rect.center_x(), rect.center_y());
}

/// Mean of the horizontal and vertical midline averages.
inline double midline_term(const Expression& f, const Rectangle& rect, const QuadratureSpec& spec = {}) {
    const double cy = rect.center_y();
    const double cx = rect.center_x();
    const double horizontal = integrate_1d([&](double x) { return f(x, cy); }, rect.a(), rect.b(), spec);
    const double vertical = integrate_1d([&](double y) { return f(cx, y); }, rect.c(), rect.d(), spec);
    return 0.5 * (horizontal / rect.width() + vertical / rect.height());
}

inline double integral_mean(const Expression& f, const Rectangle& rect, const QuadratureSpec& spec = {}) {
    return integrate_2d(f, rect, spec) / rect.area();
}

/// Quarter-sum of the four edge averages. Exactly half of functional_A for the same edges.
inline double edge_mean_term(const EdgeIntegrals& e, double width, double height) {
    return 0.25 * ((e.bottom + e.top) / width + (e.left + e.right) / height);
}

inline double edge_mean_term(const Expression& f, const Rectangle& rect, const QuadratureSpec& spec = {}) {
    return edge_mean_term(edge_integrals(f, rect, spec), rect.width(), rect.height());
}

inline double functional_A(const Expression& f, const Rectangle& rect, const QuadratureSpec& spec = {}) {
    return functional_A(edge_integrals(f, rect, spec), rect.width(), rect.height());
}

inline LinkVerdict make_link(double lhs, double rhs, double slack) {
    return {lhs, rhs, slack, lhs <= rhs + slack};
}

/// All five chain values with link verdicts L_i <= L_{i+1} + slack (1 + |L5|).
inline ChainReport chain(const Expression& f, const Rectangle& rect, const QuadratureSpec& spec = {},
                         double slack = chain_slack) {
    ChainReport r;
    r.center = center_value(f, rect);
    r.midline_mean = midline_term(f, rect, spec);
    r.integral_mean = integral_mean(f, rect, spec);
    r.edge_mean = edge_mean_term(f, rect, spec);
    r.corner_mean = corner_average(f, rect);
    const double tol = slack * (1.0 + std::fabs(r.corner_mean));
    const auto v = r.values();
    for (std::size_t i = 0; i < 4; ++i) r.links[i] = make_link(v[i], v[i + 1], tol);
    return r;
}

/// Signed C + M - A.
inline double identity_lhs(const Expression& f, const Rectangle& rect, const QuadratureSpec& spec = {}) {
    return corner_average(f, rect) + integral_mean(f, rect, spec) - functional_A(f, rect, spec);
}

inline double identity_rhs(const Expression& f, const Rectangle& rect, const QuadratureSpec& spec = {}) {
    return rect.area() / 4.0 * kernel_integral(f, rect, spec);
}

// ----------------------------------------------------------------------------
// Corner-derivative bounds
// ----------------------------------------------------------------------------

/// |f_xy| at (a,c), (a,d), (b,c), (b,d), in that order.
inline std::array<double, 4> corner_derivatives(const Expression& f, const Rectangle& rect) {
    return {std::fabs(mixed_partial(f, rect.a(), rect.c())), std::fabs(mixed_partial(f, rect.a(), rect.d())),
            std::fabs(mixed_partial(f, rect.b(), rect.c())), std::fabs(mixed_partial(f, rect.b(), rect.d()))};
}

/// (sum |v_i|^q / 4)^(1/q)
inline double corner_power_mean(const std::array<double, 4>& corners, double q) {
    if (q == 1.0) return (corners[0] + corners[1] + corners[2] + corners[3]) / 4.0;
    double s = 0.0;
    for (double v : corners) s += std::pow(v, q);
    return std::pow(s / 4.0, 1.0 / q);
}

/// q with 1/p + 1/q = 1.
inline double conjugate_exponent(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("Hoelder exponent p must exceed 1");
    return p / (p - 1.0);
}

/// 1 / (p+1)^(2/p), which lies strictly between 1/4 and 1 for p > 1.
inline double holder_coefficient(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("Hoelder exponent p must exceed 1");
    return 1.0 / std::pow(p + 1.0, 2.0 / p);
}

inline double bound_thm21(const std::array<double, 4>& corners, double area) {
    return area / 16.0 * corner_power_mean(corners, 1.0);
}

inline double bound_thm22(const std::array<double, 4>& corners, double area, double p) {
    const double q = conjugate_exponent(p);
    return area / 4.0 * holder_coefficient(p) * corner_power_mean(corners, q);
}

inline double bound_thm23(const std::array<double, 4>& corners, double area, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("power-mean exponent q must be at least 1");
    return area / 16.0 * corner_power_mean(corners, q);
}

/// |R|/16 times the corner mean of |f_xy|.
inline double bound_thm21(const Expression& f, const Rectangle& rect) {
    return bound_thm21(corner_derivatives(f, rect), rect.area());
}

/// Hoelder form; q is the conjugate of p.
inline double bound_thm22(const Expression& f, const Rectangle& rect, double p) {
    conjugate_exponent(p);
    return bound_thm22(corner_derivatives(f, rect), rect.area(), p);
}

/// Power-mean form, q >= 1.
inline double bound_thm23(const Expression& f, const Rectangle& rect, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("power-mean exponent q must be at least 1");
    return bound_thm23(corner_derivatives(f, rect), rect.area(), q);
}

} // namespace hadamard
