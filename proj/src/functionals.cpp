#include "lcn/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "lcn/errors.hpp"
#include "lcn/quadrature.hpp"

namespace lcn {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double closed_err(double value) { return 1e-13 * (std::fabs(value) + 1e-300); }
double exact_err(double value) { return 1e-14 * std::fabs(value); }

AdaptiveOptions density_options(const DensityHandle& f) {
    AdaptiveOptions opts;
    opts.breakpoints = f.quadrature_breakpoints();
    return opts;
}

// E[|X − m|^α] with the two sides of the kink integrated separately.
IntegralResult abs_moment_adaptive(const DensityHandle& f, double alpha, double m) {
    const auto [lo, hi] = f.support();
    auto g = [&f, alpha, m](double x) {
        const double lf = f.log_pdf(x);
        if (std::isinf(lf)) return 0.0;
        const double d = std::fabs(x - m);
        return d == 0.0 && alpha < 1.0 ? 0.0 : std::exp(alpha * std::log(d) + lf);
    };
    AdaptiveOptions opts = density_options(f);
    IntegralResult left{0, 0, IntegralMethod::adaptive, 0};
    if (lo < m) left = adaptive_integrate(g, lo, std::min(m, hi), opts);
    IntegralResult right{0, 0, IntegralMethod::adaptive, 0};
    if (hi > m) right = adaptive_integrate(g, std::max(m, lo), hi, opts);
    return {left.value + right.value, left.abs_error_estimate + right.abs_error_estimate,
            IntegralMethod::adaptive, left.subdivisions + right.subdivisions};
}

double sigma_alpha_core(const DensityHandle& f, double alpha, double m,
                        double* err, FunctionalMethod* method) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("sigma_alpha requires alpha > 0, got " + std::to_string(alpha));
    if (!f.is_pll()) {
        const AnalyticDensity& d = f.analytic();
        if (alpha == 1.0) {
            const double v = d.sigma1();
            *err = closed_err(v);
            *method = FunctionalMethod::closed_form;
            return v;
        }
        if (alpha == 2.0) {
            const double v = std::sqrt(d.variance());
            *err = closed_err(v);
            *method = FunctionalMethod::closed_form;
            return v;
        }
    } else if (alpha == 2.0) {
        const PiecewiseLogLinearDensity& d = f.pll();
        const double v = std::sqrt(d.second_moment() - m * m);
        *err = exact_err(v);
        *method = FunctionalMethod::exact_segment;
        return v;
    }
    const IntegralResult r = abs_moment_adaptive(f, alpha, m);
    const double v = std::pow(r.value, 1.0 / alpha);
    *err = v * (r.abs_error_estimate / r.value) / alpha;
    *method = FunctionalMethod::adaptive;
    return v;
}

double log_lp_norm_core(const DensityHandle& f, NormOrder p, FunctionalMethod* method) {
    if (p.is_one()) {
        *method = FunctionalMethod::closed_form;
        return 0.0;
    }
    if (p.is_infinite()) {
        *method = f.is_pll() ? FunctionalMethod::exact_segment : FunctionalMethod::closed_form;
        return std::log(f.mode_and_supnorm().second);
    }
    const double pv = p.value();
    if (f.is_pll()) {
        *method = FunctionalMethod::exact_segment;
        return f.pll().log_power_mass(pv) / pv;
    }
    *method = FunctionalMethod::closed_form;
    return f.analytic().log_power_mass(pv) / pv;
}

}  // namespace

FunctionalValue lp_norm(const DensityHandle& f, NormOrder p) {
    FunctionalMethod method;
    const double log_norm = log_lp_norm_core(f, p, &method);
    const double v = p.is_one() ? 1.0 : std::exp(log_norm);
    const double err = method == FunctionalMethod::exact_segment ? exact_err(v) : closed_err(v);
    return {FunctionalKind::lp_norm, p.display_value(), v, p.is_one() ? 0.0 : err, method};
}

FunctionalValue mean(const DensityHandle& f) {
    if (f.is_pll())
        return {FunctionalKind::mean, kNan, f.pll().mean(),
                exact_err(f.pll().mean()), FunctionalMethod::exact_segment};
    return {FunctionalKind::mean, kNan, f.analytic().mean(),
            closed_err(f.analytic().mean()), FunctionalMethod::closed_form};
}

FunctionalValue sigma_alpha(const DensityHandle& f, double alpha) {
    double err;
    FunctionalMethod method;
    const double m = f.is_pll() ? f.pll().mean() : f.analytic().mean();
    const double v = sigma_alpha_core(f, alpha, m, &err, &method);
    return {FunctionalKind::sigma_alpha, alpha, v, err, method};
}

FunctionalValue renyi_entropy(const DensityHandle& f, NormOrder p) {
    if (p.is_one())
        throw DomainError("Renyi entropy is undefined at p = 1; that limit is diff_entropy");
    FunctionalMethod method;
    const double log_norm = log_lp_norm_core(f, p, &method);
    const double v = p.is_infinite() ? -log_norm
                                     : (p.value() / (1.0 - p.value())) * log_norm;
    const double err = method == FunctionalMethod::exact_segment ? exact_err(v) : closed_err(v);
    return {FunctionalKind::renyi_entropy, p.display_value(), v, err, method};
}

FunctionalValue diff_entropy(const DensityHandle& f) {
    if (f.is_pll()) {
        const double v = f.pll().entropy();
        return {FunctionalKind::diff_entropy, kNan, v, exact_err(v),
                FunctionalMethod::exact_segment};
    }
    const double v = f.analytic().entropy();
    return {FunctionalKind::diff_entropy, kNan, v, closed_err(v),
            FunctionalMethod::closed_form};
}

FunctionalValue lp_norm_restricted(const DensityHandle& f, NormOrder p,
                                   double omega_a, double omega_b) {
    if (!std::isfinite(omega_a) || !std::isfinite(omega_b) || !(omega_a < omega_b))
        throw UsageError("restricted norm needs a finite interval with omega_a < omega_b");
    if (p.is_infinite()) {
        // log-concave densities are unimodal: the restricted sup sits at the
        // mode clamped into Ω.
        const double x = std::clamp(f.mode_and_supnorm().first, omega_a, omega_b);
        const double v = f.pdf(x);
        return {FunctionalKind::lp_norm, p.display_value(), v, closed_err(v),
                FunctionalMethod::closed_form};
    }
    const double pv = p.value();
    auto g = [&f, pv](double x) {
        const double lf = f.log_pdf(x);
        return std::isinf(lf) ? 0.0 : std::exp(pv * lf);
    };
    const IntegralResult r = adaptive_integrate(g, omega_a, omega_b, density_options(f));
    const double v = std::pow(r.value, 1.0 / pv);
    const double err = r.value > 0.0 ? v * (r.abs_error_estimate / r.value) / pv : 0.0;
    return {FunctionalKind::lp_norm, p.display_value(), v, err, FunctionalMethod::adaptive};
}

// ---------------------------------------------------------------------------
// DensityFunctionals

double DensityFunctionals::mean() const {
    if (!have_mean_) {
        mean_ = f_.is_pll() ? f_.pll().mean() : f_.analytic().mean();
        have_mean_ = true;
    }
    return mean_;
}

double DensityFunctionals::log_lp_norm(NormOrder p) const {
    if (p.is_one()) return 0.0;
    const double key = p.reciprocal();
    auto it = log_norms_.find(key);
    if (it != log_norms_.end()) return it->second;
    FunctionalMethod method;
    const double v = log_lp_norm_core(f_, p, &method);
    log_norms_.emplace(key, v);
    return v;
}

double DensityFunctionals::sigma_alpha(double alpha) const {
    auto it = sigmas_.find(alpha);
    if (it != sigmas_.end()) return it->second;
    double err;
    FunctionalMethod method;
    const double v = sigma_alpha_core(f_, alpha, mean(), &err, &method);
    sigmas_.emplace(alpha, v);
    return v;
}

double DensityFunctionals::diff_entropy() const {
    if (!have_entropy_) {
        entropy_ = f_.is_pll() ? f_.pll().entropy() : f_.analytic().entropy();
        have_entropy_ = true;
    }
    return entropy_;
}

double DensityFunctionals::renyi_entropy(NormOrder p) const {
    if (p.is_one())
        throw DomainError("Renyi entropy is undefined at p = 1; that limit is diff_entropy");
    const double log_norm = log_lp_norm(p);
    return p.is_infinite() ? -log_norm : (p.value() / (1.0 - p.value())) * log_norm;
}

}  // namespace lcn
