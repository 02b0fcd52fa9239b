#pragma once

/**
 * @file cubature.hpp
 * @brief Corrected-trapezoid cubature with a-priori error certificates.
 *
 * Rearranging the corner/edge/mean identity on a tile T gives
 *
 *   integral_T f = |T| (A_T - C_T) + |T| E_T,
 *
 * where only 1D edge integrals enter A_T and |E_T| <= |T|/16 * mean_corners |f_xy|
 * whenever |f_xy| is co-ordinated convex on T. Summing over a uniform m x n
 * partition yields an estimate together with a certificate
 *
 *   error_bound = sum_T |T|^2 / 16 * mean_corners_T |f_xy|.
 */

#include "hadamard/convexity.hpp"
#include "hadamard/core.hpp"
#include "hadamard/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hadamard {

struct CertifiedIntegral {
    double estimate = 0.0;
    double error_bound = 0.0;
    std::size_t tiles_x = 0;
    std::size_t tiles_y = 0;
    bool hypothesis_checked = false;
};

struct CubatureOptions {
    bool check_hypothesis = true;
    std::size_t global_samples = 10000;
    std::size_t tile_samples = 500;
    std::uint64_t seed = 42;
};

namespace detail {

inline double tile_estimate(double width, double height, const EdgeIntegrals& edges, double corner_avg) {
    return width * height * (functional_A(edges, width, height) - corner_avg);
}

inline double tile_certificate(const std::array<double, 4>& corner_abs_fxy, double width, double height) {
    const double area = width * height;
    return area * bound_thm21(corner_abs_fxy, area);
}

inline std::vector<double> uniform_grid(double lo, double hi, std::size_t cells) {
    std::vector<double> g(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cells);
    }
    g[cells] = hi;
    return g;
}

} // namespace detail

/// |T| (A_T - C_T) from 1D edge integrals and corner values only.
inline double corrected_tile_estimate(const Expression& f, const Rectangle& tile, const QuadratureSpec& spec = {}) {
    return detail::tile_estimate(tile.width(), tile.height(), edge_integrals(f, tile, spec), corner_average(f, tile));
}

/// m x n uniform partition; interior edges are integrated once and shared
/// by both neighbouring tiles.
inline CertifiedIntegral composite_integrate(const Expression& f, const Rectangle& rect, std::size_t m,
                                             std::size_t n, const QuadratureSpec& spec = {},
                                             const CubatureOptions& opt = {}) {
    if (m < 1 || n < 1) throw std::invalid_argument("tile counts must be at least 1");
    spec.validate();

    const auto xs = detail::uniform_grid(rect.a(), rect.b(), m);
    const auto ys = detail::uniform_grid(rect.c(), rect.d(), n);

    // horizontal[j][i]: along y = ys[j] over [xs[i], xs[i+1]]
    std::vector<std::vector<double>> horizontal(n + 1, std::vector<double>(m));
    for (std::size_t j = 0; j <= n; ++j) {
        const double y = ys[j];
        for (std::size_t i = 0; i < m; ++i) {
            horizontal[j][i] = integrate_1d([&](double x) { return f(x, y); }, xs[i], xs[i + 1], spec);
        }
    }
    // vertical[i][j]: along x = xs[i] over [ys[j], ys[j+1]]
    std::vector<std::vector<double>> vertical(m + 1, std::vector<double>(n));
    for (std::size_t i = 0; i <= m; ++i) {
        const double x = xs[i];
        for (std::size_t j = 0; j < n; ++j) {
            vertical[i][j] = integrate_1d([&](double y) { return f(x, y); }, ys[j], ys[j + 1], spec);
        }
    }
    std::vector<std::vector<double>> values(m + 1, std::vector<double>(n + 1));
    std::vector<std::vector<double>> abs_fxy(m + 1, std::vector<double>(n + 1));
    for (std::size_t i = 0; i <= m; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
            values[i][j] = f(xs[i], ys[j]);
            abs_fxy[i][j] = std::fabs(mixed_partial(f, xs[i], ys[j]));
        }
    }

    std::vector<double> estimates;
    std::vector<double> certificates;
    estimates.reserve(m * n);
    certificates.reserve(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double w = xs[i + 1] - xs[i];
            const double h = ys[j + 1] - ys[j];
            const EdgeIntegrals edges{horizontal[j][i], horizontal[j + 1][i], vertical[i][j], vertical[i + 1][j]};
            const double corner_avg =
                (values[i][j] + values[i][j + 1] + values[i + 1][j] + values[i + 1][j + 1]) / 4.0;
            estimates.push_back(detail::tile_estimate(w, h, edges, corner_avg));
            certificates.push_back(detail::tile_certificate(
                {abs_fxy[i][j], abs_fxy[i][j + 1], abs_fxy[i + 1][j], abs_fxy[i + 1][j + 1]}, w, h));
        }
    }

    CertifiedIntegral out;
    out.estimate = pairwise_sum(estimates);
    out.error_bound = pairwise_sum(certificates);
    out.tiles_x = m;
    out.tiles_y = n;

    if (opt.check_hypothesis) {
        // co-ordinated convexity restricts to sub-rectangles, so a global pass covers every tile
        const SamplingOptions global{opt.global_samples, opt.seed, convexity_tolerance, true};
        bool ok = check_hypothesis(f, rect, 1.0, global).passed;
        if (!ok) {
            ok = true;
            for (std::size_t i = 0; i < m && ok; ++i) {
                for (std::size_t j = 0; j < n && ok; ++j) {
                    const SamplingOptions local{opt.tile_samples, opt.seed + i * n + j, convexity_tolerance, true};
                    ok = check_hypothesis(f, Rectangle(xs[i], xs[i + 1], ys[j], ys[j + 1]), 1.0, local).passed;
                }
            }
        }
        out.hypothesis_checked = ok;
    }
    return out;
}

/// High-accuracy reference: the tensor rule at four times the panel density.
inline double reference_integral(const Expression& f, const Rectangle& rect, const QuadratureSpec& spec = {}) {
    QuadratureSpec dense = spec;
    dense.panels_2d_per_axis *= 4;
    return integrate_2d(f, rect, dense);
}

struct ConvergenceRow {
    std::size_t m = 0;
    std::size_t n = 0;
    double estimate = 0.0;
    double error_bound = 0.0;
    std::optional<double> true_error;
    bool hypothesis_checked = false;
};

/// composite_integrate at m = n = 2^k for k < levels. The true error is
/// measured against `reference`, or against reference_integral when absent.
inline std::vector<ConvergenceRow> convergence_table(const Expression& f, const Rectangle& rect, std::size_t levels,
                                                     const QuadratureSpec& spec = {},
                                                     std::optional<double> reference = std::nullopt,
                                                     const CubatureOptions& opt = {}) {
    if (levels < 1) throw std::invalid_argument("levels must be at least 1");
    if (!reference) reference = reference_integral(f, rect, spec);
    std::vector<ConvergenceRow> rows;
    for (std::size_t k = 0; k < levels; ++k) {
        const std::size_t tiles = std::size_t{1} << k;
        const CertifiedIntegral ci = composite_integrate(f, rect, tiles, tiles, spec, opt);
        rows.push_back({tiles, tiles, ci.estimate, ci.error_bound, std::fabs(ci.estimate - *reference),
                        ci.hypothesis_checked});
    }
    return rows;
}

} // namespace hadamard
