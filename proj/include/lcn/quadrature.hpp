#pragma once

#include <functional>
#include <vector>

namespace lcn {

using Integrand = std::function<double(double)>;

enum class IntegralMethod { exact_segment, adaptive, riemann_oracle };

struct IntegralResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    IntegralMethod method = IntegralMethod::adaptive;
    int subdivisions = 0;
};

// ∫_{x0}^{x1} exp(a + b x) dx in closed form. Endpoints may be ±∞ provided
// the matching tail decays (x1 = +∞ needs b < 0, x0 = −∞ needs b > 0);
// a divergent configuration is a domain error. Evaluated through the
// log-space variant, so huge |a| does not overflow intermediates.
double exact_exp_affine_integral(double a, double b, double x0, double x1);

// log of the integral above; the preferred form when segments are later
// combined with logsumexp.
double log_exact_exp_affine_integral(double a, double b, double x0, double x1);

// ∫_{x0}^{x1} x^m exp(a + b x) dx for m ∈ {0, 1, 2}: the moment companions
// of exact_exp_affine_integral, used for exact piecewise means/variances.
// Same endpoint rules.
double moment_exp_affine_integral(int m, double a, double b, double x0, double x1);

struct AdaptiveOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_intervals = 4000;
    // Interior points where the integrand has kinks (density knots, support
    // edges, the mean for |x−m|^α weights). Points outside the domain are
    // ignored. Strongly recommended for integrands with bounded support.
    std::vector<double> breakpoints;
};

// Globally adaptive Gauss–Kronrod 7–15 over [lo, hi]; either endpoint may be
// ±∞ (handled by a monotone rational change of variable onto a bounded
// interval). Throws NonConvergenceError, carrying the best estimate, when the
// interval budget runs out before max(abs_tol, rel_tol·|value|) is met.
IntegralResult adaptive_integrate(const Integrand& g, double lo, double hi,
                                  const AdaptiveOptions& opts = {});

// Deliberately naive composite-midpoint oracle sharing no code with
// adaptive_integrate. Infinite endpoints are clipped by a doubling probe scan
// from the finite side (or the origin) out to where the integrand has
// vanished; intended for integrands whose bulk is reachable that way, which
// covers every density this project constructs. n_points ≥ 1000.
double riemann_oracle(const Integrand& g, double lo, double hi, long n_points);

}  // namespace lcn
