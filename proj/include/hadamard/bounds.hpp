#pragma once

#include "hadamard/convexity.hpp"
#include "hadamard/core.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace hadamard {

/// Absolute slack when comparing the identity's left side with a bound.
inline constexpr double bound_slack = 1e-10;

struct HolderBound {
    double p = 0.0;
    double q = 0.0;
    double bound22 = 0.0;
    double bound23 = 0.0;
    bool hypothesis_passed = false; // |f_xy|^q co-ordinated convex on the samples
    bool bound22_holds = false;
    bool bound23_holds = false;
    bool ordering_holds = false; // bound23 <= bound22
};

struct BoundReport {
    double lhs = 0.0;     // signed identity left side
    double lhs_abs = 0.0;
    double bound21 = 0.0;
    bool bound21_holds = false;
    bool hypothesis21_passed = false; // |f_xy| co-ordinated convex on the samples
    std::array<double, 4> corner_derivatives{}; // |f_xy| at (a,c), (a,d), (b,c), (b,d)
    std::vector<HolderBound> holder;

    /// A bound failed although its hypothesis passed, or the ordering broke.
    bool any_violation() const {
        if (hypothesis21_passed && !bound21_holds) return true;
        for (const auto& h : holder) {
            if (!h.ordering_holds) return true;
            if (h.hypothesis_passed && (!h.bound22_holds || !h.bound23_holds)) return true;
        }
        return false;
    }

    bool all_hypotheses_passed() const {
        if (!hypothesis21_passed) return false;
        for (const auto& h : holder) {
            if (!h.hypothesis_passed) return false;
        }
        return true;
    }
};

/// Left side of the identity against all three bounds, one Hoelder pair per p.
/// Bounds are always reported; the hypothesis flags say whether they are guaranteed.
inline BoundReport verify_bounds(const Expression& f, const Rectangle& rect, const QuadratureSpec& spec,
                                 const std::vector<double>& p_list, const SamplingOptions& sampling = {}) {
    BoundReport r;
    r.lhs = identity_lhs(f, rect, spec);
    r.lhs_abs = std::fabs(r.lhs);
    r.corner_derivatives = corner_derivatives(f, rect);
    const double area = rect.area();

    r.bound21 = bound_thm21(r.corner_derivatives, area);
    r.bound21_holds = r.lhs_abs <= r.bound21 + bound_slack;
    r.hypothesis21_passed = check_hypothesis(f, rect, 1.0, sampling).passed;

    for (double p : p_list) {
        HolderBound h;
        h.p = p;
        h.q = conjugate_exponent(p);
        h.bound22 = bound_thm22(r.corner_derivatives, area, p);
        h.bound23 = bound_thm23(r.corner_derivatives, area, h.q);
        h.bound22_holds = r.lhs_abs <= h.bound22 + bound_slack;
        h.bound23_holds = r.lhs_abs <= h.bound23 + bound_slack;
        h.ordering_holds = h.bound23 <= h.bound22;
        h.hypothesis_passed = check_hypothesis(f, rect, h.q, sampling).passed;
        r.holder.push_back(h);
    }
    return r;
}

} // namespace hadamard
