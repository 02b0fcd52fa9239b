#pragma once

/**
 * @file dual.hpp
 * @brief Bivariate hyper-dual numbers.
 *
 * A DualValue carries f, df/dx, df/dy and d2f/dxdy through arithmetic.
 * With the seeds x = {x, 1, 0, 0} and y = {y, 0, 1, 0}, evaluating any
 * composition of the supported operations yields the exact mixed partial
 * in the last slot (up to rounding), because eps_x^2 = eps_y^2 = 0 while
 * eps_x * eps_y survives.
 *
 * For a unary g applied to u:
 *   value = g(u)
 *   dx    = g'(u) u_x
 *   dy    = g'(u) u_y
 *   dxy   = g'(u) u_xy + g''(u) u_x u_y
 */

#include <cmath>

namespace hadamard {

struct DualValue {
    double value = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    double dxy = 0.0;

    constexpr DualValue() = default;
    constexpr DualValue(double v) : value(v) {}
    constexpr DualValue(double v, double x, double y, double xy) : value(v), dx(x), dy(y), dxy(xy) {}

    static constexpr DualValue seed_x(double x) { return {x, 1.0, 0.0, 0.0}; }
    static constexpr DualValue seed_y(double y) { return {y, 0.0, 1.0, 0.0}; }

    constexpr bool operator==(const DualValue&) const = default;

    /// Applies g given g(u), g'(u), g''(u). Zero multipliers short-circuit so an
    /// infinite g' or g'' only leaks in when the slot actually needs it.
    constexpr DualValue chain(double g0, double g1, double g2) const {
        auto scaled = [](double k, double m) { return m == 0.0 ? 0.0 : k * m; };
        return {g0, scaled(g1, dx), scaled(g1, dy), scaled(g1, dxy) + scaled(g2, dx * dy)};
    }

    bool derivatives_finite() const {
        return std::isfinite(dx) && std::isfinite(dy) && std::isfinite(dxy);
    }
};

constexpr DualValue operator+(const DualValue& a, const DualValue& b) {
    return {a.value + b.value, a.dx + b.dx, a.dy + b.dy, a.dxy + b.dxy};
}

constexpr DualValue operator-(const DualValue& a, const DualValue& b) {
    return {a.value - b.value, a.dx - b.dx, a.dy - b.dy, a.dxy - b.dxy};
}

constexpr DualValue operator-(const DualValue& a) { return {-a.value, -a.dx, -a.dy, -a.dxy}; }

// product rule, including the cross term for the mixed slot
constexpr DualValue operator*(const DualValue& a, const DualValue& b) {
    return {a.value * b.value,
            a.value * b.dx + a.dx * b.value,
            a.value * b.dy + a.dy * b.value,
            a.value * b.dxy + a.dx * b.dy + a.dy * b.dx + a.dxy * b.value};
}

constexpr DualValue reciprocal(const DualValue& a) {
    const double r = 1.0 / a.value;
    return a.chain(r, -r * r, 2.0 * r * r * r);
}

constexpr DualValue operator/(const DualValue& a, const DualValue& b) { return a * reciprocal(b); }

inline DualValue exp(const DualValue& a) {
    const double e = std::exp(a.value);
    return a.chain(e, e, e);
}

inline DualValue log(const DualValue& a) {
    const double r = 1.0 / a.value;
    return a.chain(std::log(a.value), r, -r * r);
}

inline DualValue sin(const DualValue& a) {
    const double s = std::sin(a.value);
    return a.chain(s, std::cos(a.value), -s);
}

inline DualValue cos(const DualValue& a) {
    const double c = std::cos(a.value);
    return a.chain(c, -std::sin(a.value), -c);
}

inline DualValue sqrt(const DualValue& a) {
    const double r = std::sqrt(a.value);
    return a.chain(r, 0.5 / r, -0.25 / (r * a.value));
}

// Away from 0 only; the evaluator rejects the kink before calling this.
inline DualValue abs(const DualValue& a) {
    const double sign = a.value < 0.0 ? -1.0 : 1.0;
    return a.chain(std::fabs(a.value), sign, 0.0);
}

/// u^k for a constant real exponent k.
inline DualValue pow(const DualValue& a, double k) {
    const double g0 = std::pow(a.value, k);
    const double g1 = k == 0.0 ? 0.0 : k * std::pow(a.value, k - 1.0);
    const double k2 = k * (k - 1.0);
    const double g2 = k2 == 0.0 ? 0.0 : k2 * std::pow(a.value, k - 2.0);
    return a.chain(g0, g1, g2);
}

} // namespace hadamard
