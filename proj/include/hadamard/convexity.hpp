#pragma once

/**
 * @file convexity.hpp
 * @brief Sampling checks for co-ordinated convexity and its relatives.
 *
 * None of these prove convexity. A pass means "no violation among the
 * samples tested"; a failure carries a concrete witness that can be
 * re-evaluated independently.
 *
 * The co-ordinated inequality is tested in the form
 *
 *   f(t x + (1-t) y, s u + (1-s) v)
 *     <= t s f(x,u) + s (1-t) f(y,u) + t (1-s) f(x,v) + (1-t)(1-s) f(y,v)
 *
 * with x, y in [a,b] and u, v in [c,d], i.e. (x,u) and (y,v) are two points
 * of the rectangle and the four right-hand evaluations sit on the corners
 * of the box they span.
 */

#include "hadamard/core.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/expr.hpp"
#include "hadamard/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>

namespace hadamard {

inline constexpr double convexity_tolerance = 1e-10;

struct CoordinatedWitness {
    double t = 0.0, s = 0.0;
    double x = 0.0, y = 0.0; // first coordinates
    double u = 0.0, v = 0.0; // second coordinates
    double lhs = 0.0, rhs = 0.0;
};

enum class Axis { x, y };

/// Three collinear points on a slice where the middle value lies above the chord.
struct SecantWitness {
    Axis axis = Axis::x; // direction the slice varies in
    double line = 0.0;   // the fixed other coordinate
    std::array<double, 3> points{};
    double lhs = 0.0, rhs = 0.0;
};

using Counterexample = std::variant<CoordinatedWitness, SecantWitness>;

struct ConvexityVerdict {
    bool passed = true;
    std::size_t samples_tested = 0;
    /// Largest (lhs - rhs) / max(1, magnitude) seen; negative or tiny when passed.
    double worst_violation = -std::numeric_limits<double>::infinity();
    std::optional<Counterexample> counterexample;
};

struct SamplingOptions {
    std::size_t n_samples = 10000;
    std::uint64_t seed = 42;
    double tolerance = convexity_tolerance;
    bool midpoint_lattice = true;
};

namespace detail {

inline constexpr std::size_t lattice_size = 17;

class UnitSampler {
public:
    explicit UnitSampler(std::uint64_t seed) : rng_(seed) {}
    // 53 random bits mapped to [0, 1); independent of the standard library's distributions
    double next() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double in(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::mt19937_64 rng_;
};

inline double lattice_point(double lo, double hi, std::size_t i) {
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(lattice_size - 1);
}

[[noreturn]] inline void rethrow_at_sample(const EvaluationError& e, const std::string& where) {
    if (dynamic_cast<const NonDifferentiableError*>(&e)) {
        throw NonDifferentiableError(std::string(e.what()) + " (sample " + where + ")", e.subterm());
    }
    throw DomainError(std::string(e.what()) + " (sample " + where + ")", e.subterm());
}

/// Scaled excess of the co-ordinated inequality at one tuple.
template <typename G>
CoordinatedWitness coordinated_excess(G& g, double t, double s, double x, double y, double u, double v,
                                      double& scaled) {
    CoordinatedWitness w{t, s, x, y, u, v, 0.0, 0.0};
    double fxu, fyu, fxv, fyv;
    try {
        w.lhs = g(t * x + (1.0 - t) * y, s * u + (1.0 - s) * v);
        fxu = g(x, u);
        fyu = g(y, u);
        fxv = g(x, v);
        fyv = g(y, v);
    } catch (const EvaluationError& e) {
        rethrow_at_sample(e, "t=" + format_number(t) + " s=" + format_number(s) + " x=" + format_number(x) +
                                    " y=" + format_number(y) + " u=" + format_number(u) + " v=" + format_number(v));
    }
    w.rhs = t * s * fxu + s * (1.0 - t) * fyu + t * (1.0 - s) * fxv + (1.0 - t) * (1.0 - s) * fyv;
    const double scale =
        std::max({1.0, std::fabs(w.lhs), std::fabs(fxu), std::fabs(fyu), std::fabs(fxv), std::fabs(fyv)});
    scaled = (w.lhs - w.rhs) / scale;
    return w;
}

template <typename G>
SecantWitness secant_excess(G& g, Axis axis, double line, double p0, double p1, double p2, double& scaled) {
    SecantWitness w{axis, line, {p0, p1, p2}, 0.0, 0.0};
    auto at = [&](double p) { return axis == Axis::x ? g(p, line) : g(line, p); };
    double g0, g2;
    try {
        g0 = at(p0);
        w.lhs = at(p1);
        g2 = at(p2);
    } catch (const EvaluationError& e) {
        rethrow_at_sample(e, "line=" + format_number(line) + " points=" + format_number(p0) + "," +
                                    format_number(p1) + "," + format_number(p2));
    }
    w.rhs = ((p2 - p1) * g0 + (p1 - p0) * g2) / (p2 - p0);
    const double scale = std::max({1.0, std::fabs(g0), std::fabs(w.lhs), std::fabs(g2)});
    scaled = (w.lhs - w.rhs) / scale;
    return w;
}

template <typename Witness>
void record(ConvexityVerdict& verdict, const Witness& w, double scaled, double tolerance) {
    ++verdict.samples_tested;
    if (scaled > verdict.worst_violation) {
        verdict.worst_violation = scaled;
        if (scaled > tolerance) verdict.counterexample = w;
    }
}

inline void finish(ConvexityVerdict& verdict, double tolerance) {
    verdict.passed = verdict.worst_violation <= tolerance;
    if (verdict.passed) verdict.counterexample.reset();
}

} // namespace detail

/// Co-ordinated convexity of any scalar field g(x, y) on rect.
template <typename G>
ConvexityVerdict check_coordinated_convexity(G&& g, const Rectangle& rect, const SamplingOptions& opt = {}) {
    if (opt.n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
    ConvexityVerdict verdict;
    detail::UnitSampler rng(opt.seed);
    for (std::size_t k = 0; k < opt.n_samples; ++k) {
        const double t = rng.next();
        const double s = rng.next();
        const double x = rng.in(rect.a(), rect.b());
        const double u = rng.in(rect.c(), rect.d());
        const double y = rng.in(rect.a(), rect.b());
        const double v = rng.in(rect.c(), rect.d());
        double scaled = 0.0;
        const auto w = detail::coordinated_excess(g, t, s, x, y, u, v, scaled);
        detail::record(verdict, w, scaled, opt.tolerance);
    }
    if (opt.midpoint_lattice) {
        constexpr std::size_t n = detail::lattice_size;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double x = detail::lattice_point(rect.a(), rect.b(), i);
                const double y = detail::lattice_point(rect.a(), rect.b(), n - 1 - j);
                const double u = detail::lattice_point(rect.c(), rect.d(), j);
                const double v = detail::lattice_point(rect.c(), rect.d(), n - 1 - i);
                double scaled = 0.0;
                const auto w = detail::coordinated_excess(g, 0.5, 0.5, x, y, u, v, scaled);
                detail::record(verdict, w, scaled, opt.tolerance);
            }
        }
    }
    detail::finish(verdict, opt.tolerance);
    return verdict;
}

inline ConvexityVerdict check_coordinated_convexity(const Expression& f, const Rectangle& rect,
                                                    const SamplingOptions& opt = {}) {
    return check_coordinated_convexity([&f](double x, double y) { return f(x, y); }, rect, opt);
}

/// Convexity of the slices u -> f(u, y) and v -> f(x, v) along n_lines evenly
/// spaced lines per direction, n_samples random secant tests per line.
template <typename G>
ConvexityVerdict check_partial_convexity(G&& g, const Rectangle& rect, std::size_t n_lines,
                                         const SamplingOptions& opt = {}) {
    if (n_lines < 1) throw std::invalid_argument("n_lines must be at least 1");
    if (opt.n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
    ConvexityVerdict verdict;
    detail::UnitSampler rng(opt.seed);
    auto line_at = [n_lines](double lo, double hi, std::size_t k) {
        if (n_lines == 1) return 0.5 * (lo + hi);
        return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n_lines - 1);
    };
    for (Axis axis : {Axis::x, Axis::y}) {
        const double lo = axis == Axis::x ? rect.a() : rect.c();
        const double hi = axis == Axis::x ? rect.b() : rect.d();
        const double line_lo = axis == Axis::x ? rect.c() : rect.a();
        const double line_hi = axis == Axis::x ? rect.d() : rect.b();
        for (std::size_t k = 0; k < n_lines; ++k) {
            const double line = line_at(line_lo, line_hi, k);
            for (std::size_t i = 0; i < opt.n_samples; ++i) {
                std::array<double, 3> p{rng.in(lo, hi), rng.in(lo, hi), rng.in(lo, hi)};
                std::sort(p.begin(), p.end());
                if (!(p[0] < p[1] && p[1] < p[2])) continue;
                double scaled = 0.0;
                const auto w = detail::secant_excess(g, axis, line, p[0], p[1], p[2], scaled);
                detail::record(verdict, w, scaled, opt.tolerance);
            }
            if (opt.midpoint_lattice) {
                constexpr std::size_t n = detail::lattice_size;
                const double mid = detail::lattice_point(lo, hi, n / 2);
                for (std::size_t i = 0; i < n / 2; ++i) {
                    double scaled = 0.0;
                    const auto w = detail::secant_excess(g, axis, line, detail::lattice_point(lo, hi, i), mid,
                                                         detail::lattice_point(lo, hi, n - 1 - i), scaled);
                    detail::record(verdict, w, scaled, opt.tolerance);
                }
            }
        }
    }
    detail::finish(verdict, opt.tolerance);
    return verdict;
}

inline ConvexityVerdict check_partial_convexity(const Expression& f, const Rectangle& rect, std::size_t n_lines,
                                                const SamplingOptions& opt = {}) {
    return check_partial_convexity([&f](double x, double y) { return f(x, y); }, rect, n_lines, opt);
}

/// Co-ordinated convexity of |f_xy|^q, the hypothesis behind the corner bounds.
inline ConvexityVerdict check_hypothesis(const Expression& f, const Rectangle& rect, double q,
                                         const SamplingOptions& opt = {}) {
    if (!(q >= 1.0)) throw std::invalid_argument("hypothesis exponent q must be at least 1");
    auto field = [&f, q](double x, double y) {
        const double d = std::fabs(mixed_partial(f, x, y));
        return q == 1.0 ? d : std::pow(d, q);
    };
    return check_coordinated_convexity(field, rect, opt);
}

/// One-dimensional chain g(mid) <= mean(g) <= (g(lo) + g(hi))/2.
struct Chain1d {
    double left = 0.0;  // g at the midpoint
    double mid = 0.0;   // integral mean
    double right = 0.0; // endpoint average
    bool left_holds = false;
    bool right_holds = false;
};

template <typename F>
Chain1d hh_chain_1d(F&& g, double lo, double hi, const QuadratureSpec& spec = {}, double slack = chain_slack) {
    Chain1d r;
    r.left = g(0.5 * (lo + hi));
    r.mid = integrate_1d(g, lo, hi, spec) / (hi - lo);
    r.right = 0.5 * (g(lo) + g(hi));
    const double tol = slack * (1.0 + std::fabs(r.right));
    r.left_holds = r.left <= r.mid + tol;
    r.right_holds = r.mid <= r.right + tol;
    return r;
}

} // namespace hadamard
