#pragma once

#include <map>
#include <utility>

#include "lcn/density.hpp"
#include "lcn/norm_order.hpp"

namespace lcn {

enum class FunctionalKind { lp_norm, sigma_alpha, diff_entropy, renyi_entropy, mean };
enum class FunctionalMethod { closed_form, exact_segment, adaptive };

struct FunctionalValue {
    FunctionalKind kind;
    double order;  // p or α; NaN for mean/diff_entropy
    double value;
    double error_estimate;
    FunctionalMethod method;
};

// ‖f‖_p for p ∈ [1, ∞]. p = 1 returns exactly 1, p = ∞ the sup-norm from the
// mode; in between the value is closed form (catalog) or exact per segment
// (PLL) — the adaptive integrator enters only through cross-checks.
FunctionalValue lp_norm(const DensityHandle& f, NormOrder p);

FunctionalValue mean(const DensityHandle& f);

// σ_α = E[|X − E[X]|^α]^{1/α} for α > 0 (the theorems state α ≥ 1; callers
// flag smaller α rather than this function rejecting it). Closed form for
// catalog α ∈ {1, 2} and PLL α = 2; otherwise adaptive quadrature split at
// the mean, where |x−m|^α has its kink.
FunctionalValue sigma_alpha(const DensityHandle& f, double alpha);

// h_p(X) = (p/(1−p))·log‖f‖_p for p > 1; p = ∞ gives −log‖f‖_∞.
// p = 1 is a domain error: that limit is diff_entropy.
FunctionalValue renyi_entropy(const DensityHandle& f, NormOrder p);

// h(X) = −∫ f log f.
FunctionalValue diff_entropy(const DensityHandle& f);

// ‖f‖_{p,Ω} = (∫_Ω f^p)^{1/p} on Ω = [omega_a, omega_b] (finite interval).
FunctionalValue lp_norm_restricted(const DensityHandle& f, NormOrder p,
                                   double omega_a, double omega_b);

// Memoizing evaluator used by sweeps and the inequality checkers, so a grid
// of (p, q, α) claims over a fixed density computes each ingredient once.
// Values are held in log form where the checkers consume them that way.
// Not safe for concurrent use; give each worker its own instance.
class DensityFunctionals {
public:
    DensityFunctionals(DensityHandle f) : f_(std::move(f)) {}  // implicit on purpose

    const DensityHandle& density() const { return f_; }

    double mean() const;
    double log_lp_norm(NormOrder p) const;  // exactly 0 at p = 1
    double lp_norm(NormOrder p) const { return std::exp(log_lp_norm(p)); }
    double supnorm() const { return lp_norm(NormOrder::infinity()); }
    double sigma_alpha(double alpha) const;
    double diff_entropy() const;
    double renyi_entropy(NormOrder p) const;

private:
    DensityHandle f_;
    mutable bool have_mean_ = false, have_entropy_ = false;
    mutable double mean_ = 0.0, entropy_ = 0.0;
    mutable std::map<double, double> log_norms_;  // key: 1/p (0 for p = ∞)
    mutable std::map<double, double> sigmas_;
};

}  // namespace lcn
