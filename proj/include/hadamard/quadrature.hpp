#pragma once

/**
 * @file quadrature.hpp
 * @brief Composite Gauss-Legendre integration on intervals and rectangles.
 *
 * Every rule here is fixed-order and non-adaptive: the same inputs always
 * visit the same abscissae in the same order, and partial sums are carried
 * with Neumaier compensation, so results are bit-reproducible.
 */

#include "hadamard/errors.hpp"
#include "hadamard/expr.hpp"

#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hadamard {

/// The closed rectangle [a,b] x [c,d] with a < b and c < d.
class Rectangle {
public:
    Rectangle(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
        if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d))) {
            throw std::invalid_argument("rectangle bounds must be finite");
        }
        if (!(a < b)) throw std::invalid_argument("rectangle requires a < b");
        if (!(c < d)) throw std::invalid_argument("rectangle requires c < d");
    }

    static Rectangle unit() { return {0.0, 1.0, 0.0, 1.0}; }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }

    double width() const { return b_ - a_; }
    double height() const { return d_ - c_; }
    double area() const { return width() * height(); }
    double center_x() const { return 0.5 * (a_ + b_); }
    double center_y() const { return 0.5 * (c_ + d_); }

    bool operator==(const Rectangle&) const = default;

private:
    double a_, b_, c_, d_;
};

/// Panel and node counts for every integral the library takes.
struct QuadratureSpec {
    std::size_t panels_1d = 64;
    std::size_t panels_2d_per_axis = 64;
    std::size_t nodes_per_panel = 8;

    void validate() const {
        if (panels_1d < 1 || panels_2d_per_axis < 1 || nodes_per_panel < 1) {
            throw std::invalid_argument("quadrature counts must be at least 1");
        }
    }
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            compensation_ += (sum_ - t) + v;
        } else {
            compensation_ += (v - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double v) {
        add(v);
        return *this;
    }

    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Sum with a fixed binary-tree shape determined only by the length.
inline double pairwise_sum(std::span<const double> values) {
    if (values.empty()) return 0.0;
    if (values.size() <= 8) {
        CompensatedSum s;
        for (double v : values) s.add(v);
        return s.value();
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Newton iteration on P_n from Chebyshev starting guesses; nodes ascending.
inline GaussLegendreRule gauss_legendre(std::size_t n) {
    if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (std::size_t k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                const auto kd = static_cast<double>(k);
                p0 = ((2.0 * kd - 1.0) * z * p1 - (kd - 1.0) * p2) / kd;
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::fabs(dz) <= 1e-16) {
                // one more derivative evaluation at the converged root
                p0 = 1.0;
                p1 = 0.0;
                for (std::size_t k = 1; k <= n; ++k) {
                    const double p2 = p1;
                    p1 = p0;
                    const auto kd = static_cast<double>(k);
                    p0 = ((2.0 * kd - 1.0) * z * p1 - (kd - 1.0) * p2) / kd;
                }
                dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
                break;
            }
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

namespace detail {

inline std::string format_abscissa(double x) { return format_number(x); }

template <typename F>
double integrate_with_rule(F&& g, double lo, double hi, std::size_t panels, const GaussLegendreRule& rule) {
    CompensatedSum total;
    const double width = (hi - lo) / static_cast<double>(panels);
    const double half = 0.5 * width;
    for (std::size_t p = 0; p < panels; ++p) {
        const double left = lo + width * static_cast<double>(p);
        const double mid = left + half;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double x = mid + half * rule.nodes[k];
            double gx;
            try {
                gx = g(x);
            } catch (const DomainError& e) {
                throw DomainError(std::string(e.what()) + " (abscissa " + format_abscissa(x) + ")", e.subterm());
            }
            total.add(half * rule.weights[k] * gx);
        }
    }
    return total.value();
}

} // namespace detail

/// Composite Gauss-Legendre estimate of the integral of g over [lo, hi].
template <typename F>
    requires std::invocable<F&, double>
double integrate_1d(F&& g, double lo, double hi, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(lo < hi)) throw std::invalid_argument("integrate_1d requires lo < hi");
    return detail::integrate_with_rule(g, lo, hi, spec.panels_1d, gauss_legendre(spec.nodes_per_panel));
}

/// Tensor-product composite rule over [x0,x1] x [y0,y1] for any callable f(x, y).
/// Panels in each axis are uniform; `panels_x`, `panels_y` override the spec.
template <typename F>
    requires std::invocable<F&, double, double>
double integrate_box(F&& f, double x0, double x1, double y0, double y1, std::size_t panels_x,
                     std::size_t panels_y, std::size_t nodes) {
    const GaussLegendreRule rule = gauss_legendre(nodes);
    const double wx = (x1 - x0) / static_cast<double>(panels_x);
    const double wy = (y1 - y0) / static_cast<double>(panels_y);
    const double hx = 0.5 * wx;
    const double hy = 0.5 * wy;
    CompensatedSum total;
    for (std::size_t px = 0; px < panels_x; ++px) {
        const double mx = x0 + wx * static_cast<double>(px) + hx;
        for (std::size_t py = 0; py < panels_y; ++py) {
            const double my = y0 + wy * static_cast<double>(py) + hy;
            for (std::size_t i = 0; i < nodes; ++i) {
                const double x = mx + hx * rule.nodes[i];
                const double wxi = hx * rule.weights[i];
                for (std::size_t j = 0; j < nodes; ++j) {
                    const double y = my + hy * rule.nodes[j];
                    double fxy;
                    try {
                        fxy = f(x, y);
                    } catch (const DomainError& e) {
                        throw DomainError(std::string(e.what()) + " (abscissa " + detail::format_abscissa(x) +
                                              ", " + detail::format_abscissa(y) + ")",
                                          e.subterm());
                    }
                    total.add(wxi * hy * rule.weights[j] * fxy);
                }
            }
        }
    }
    return total.value();
}

/// Double integral of f over rect.
inline double integrate_2d(const Expression& f, const Rectangle& rect, const QuadratureSpec& spec = {}) {
    spec.validate();
    return integrate_box([&f](double x, double y) { return f(x, y); }, rect.a(), rect.b(), rect.c(), rect.d(),
                         spec.panels_2d_per_axis, spec.panels_2d_per_axis, spec.nodes_per_panel);
}

/**
 * Integral over the unit square of (1-2t)(1-2s) f_xy(ta+(1-t)b, sc+(1-s)d),
 * where f_xy is the spatial mixed partial taken with dual numbers.
 *
 * The quadrant boundaries t = 1/2 and s = 1/2 are panel boundaries, so each
 * of the four sub-squares sees a smooth integrand.
 */
inline double kernel_integral(const Expression& f, const Rectangle& rect, const QuadratureSpec& spec = {}) {
    spec.validate();
    const std::size_t panels = std::max<std::size_t>(1, spec.panels_2d_per_axis / 2);
    auto integrand = [&](double t, double s) {
        const double x = t * rect.a() + (1.0 - t) * rect.b();
        const double y = s * rect.c() + (1.0 - s) * rect.d();
        return (1.0 - 2.0 * t) * (1.0 - 2.0 * s) * mixed_partial(f, x, y);
    };
    const double quadrants[4] = {
        integrate_box(integrand, 0.0, 0.5, 0.0, 0.5, panels, panels, spec.nodes_per_panel),
        integrate_box(integrand, 0.0, 0.5, 0.5, 1.0, panels, panels, spec.nodes_per_panel),
        integrate_box(integrand, 0.5, 1.0, 0.0, 0.5, panels, panels, spec.nodes_per_panel),
        integrate_box(integrand, 0.5, 1.0, 0.5, 1.0, panels, panels, spec.nodes_per_panel),
    };
    CompensatedSum total;
    for (double q : quadrants) total.add(q);
    return total.value();
}

} // namespace hadamard
