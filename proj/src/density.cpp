#include "lcn/density.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "lcn/errors.hpp"
#include "lcn/quadrature.hpp"
#include "lcn/special_functions.hpp"

namespace lcn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454836;

double logsumexp(const std::vector<double>& v) {
    double top = -kInf;
    for (double x : v) top = std::max(top, x);
    if (std::isinf(top)) return top;
    double s = 0.0;
    for (double x : v) s += std::exp(x - top);
    return top + std::log(s);
}

void append_num(std::string& out, double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, r.ptr);
    out.push_back(';');
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// ---------------------------------------------------------------------------
// PiecewiseLogLinearDensity

PiecewiseLogLinearDensity::PiecewiseLogLinearDensity(std::vector<double> knots,
                                                     std::vector<double> log_values,
                                                     double left_slope, double right_slope)
    : knots_(std::move(knots)), logv_(std::move(log_values)),
      lslope_(left_slope), rslope_(right_slope) {
    const size_t k = knots_.size();
    if (k == 0 || logv_.size() != k)
        throw UsageError("PLL density needs k >= 1 knots and matching log_values");
    for (size_t i = 0; i < k; ++i) {
        if (!std::isfinite(knots_[i]) || !std::isfinite(logv_[i]))
            throw UsageError("PLL knots and log_values must be finite");
        if (i > 0 && !(knots_[i - 1] < knots_[i]))
            throw UsageError("PLL knots must be strictly increasing");
    }
    if (!(lslope_ > 0.0) || !std::isfinite(lslope_))
        throw DomainError("PLL left tail slope must be positive (finite moments)");
    if (!(rslope_ < 0.0) || !std::isfinite(rslope_))
        throw DomainError("PLL right tail slope must be negative (finite moments)");

    slopes_.reserve(k - 1);
    for (size_t i = 0; i + 1 < k; ++i)
        slopes_.push_back((logv_[i + 1] - logv_[i]) / (knots_[i + 1] - knots_[i]));

    // Non-increasing slope sequence == log-concavity for this class.
    double prev = lslope_;
    for (size_t i = 0; i <= slopes_.size(); ++i) {
        const double cur = (i < slopes_.size()) ? slopes_[i] : rslope_;
        const double tol = 1e-12 * std::max({1.0, std::fabs(prev), std::fabs(cur)});
        if (cur > prev + tol)
            throw DomainError("not log-concave: slope increases entering segment " +
                              std::to_string(i));
        prev = std::min(prev, cur);
    }

    // Normalize: subtract the exact log mass from every level.
    log_norm_ = -log_power_mass(1.0);
    for (double& l : logv_) l += log_norm_;

    // Exact CDF at the knots.
    knot_cdf_.resize(k);
    knot_cdf_[0] = std::exp(logv_[0]) / lslope_;
    for (size_t i = 0; i + 1 < k; ++i) {
        const double seg = exact_exp_affine_integral(
            logv_[i] - slopes_[i] * knots_[i], slopes_[i], knots_[i], knots_[i + 1]);
        knot_cdf_[i + 1] = knot_cdf_[i] + seg;
    }
}

double PiecewiseLogLinearDensity::log_pdf(double x) const {
    if (x <= knots_.front()) return logv_.front() + lslope_ * (x - knots_.front());
    if (x >= knots_.back()) return logv_.back() + rslope_ * (x - knots_.back());
    const size_t i =
        std::upper_bound(knots_.begin(), knots_.end(), x) - knots_.begin() - 1;
    return logv_[i] + slopes_[i] * (x - knots_[i]);
}

double PiecewiseLogLinearDensity::log_power_mass(double p) const {
    const size_t k = knots_.size();
    std::vector<double> parts;
    parts.reserve(k + 1);
    parts.push_back(p * logv_.front() - std::log(p * lslope_));
    for (size_t i = 0; i + 1 < k; ++i)
        parts.push_back(log_exact_exp_affine_integral(
            p * (logv_[i] - slopes_[i] * knots_[i]), p * slopes_[i], knots_[i],
            knots_[i + 1]));
    parts.push_back(p * logv_.back() - std::log(p * (-rslope_)));
    return logsumexp(parts);
}

double PiecewiseLogLinearDensity::mass() const { return std::exp(log_power_mass(1.0)); }

double PiecewiseLogLinearDensity::mode() const {
    const size_t i = std::max_element(logv_.begin(), logv_.end()) - logv_.begin();
    return knots_[i];
}

double PiecewiseLogLinearDensity::supnorm() const {
    return std::exp(*std::max_element(logv_.begin(), logv_.end()));
}

double PiecewiseLogLinearDensity::mean() const {
    const size_t k = knots_.size();
    double s = moment_exp_affine_integral(1, logv_.front() - lslope_ * knots_.front(),
                                          lslope_, -kInf, knots_.front());
    for (size_t i = 0; i + 1 < k; ++i)
        s += moment_exp_affine_integral(1, logv_[i] - slopes_[i] * knots_[i], slopes_[i],
                                        knots_[i], knots_[i + 1]);
    s += moment_exp_affine_integral(1, logv_.back() - rslope_ * knots_.back(), rslope_,
                                    knots_.back(), kInf);
    return s;
}

double PiecewiseLogLinearDensity::second_moment() const {
    const size_t k = knots_.size();
    double s = moment_exp_affine_integral(2, logv_.front() - lslope_ * knots_.front(),
                                          lslope_, -kInf, knots_.front());
    for (size_t i = 0; i + 1 < k; ++i)
        s += moment_exp_affine_integral(2, logv_[i] - slopes_[i] * knots_[i], slopes_[i],
                                        knots_[i], knots_[i + 1]);
    s += moment_exp_affine_integral(2, logv_.back() - rslope_ * knots_.back(), rslope_,
                                    knots_.back(), kInf);
    return s;
}

double PiecewiseLogLinearDensity::entropy() const {
    // −∫ f log f segment by segment, in knot-shifted coordinates u = x − x_i
    // where log f = ℓ_i + s·u, so both coefficients stay moderate:
    //   −∫ (ℓ + s u) e^{ℓ + s u} du = −ℓ·M0 − s·M1.
    const size_t k = knots_.size();
    double h = 0.0;
    auto piece = [&](double l, double s, double u0, double u1) {
        h -= l * moment_exp_affine_integral(0, l, s, u0, u1) +
             s * moment_exp_affine_integral(1, l, s, u0, u1);
    };
    piece(logv_.front(), lslope_, -kInf, 0.0);
    for (size_t i = 0; i + 1 < k; ++i)
        piece(logv_[i], slopes_[i], 0.0, knots_[i + 1] - knots_[i]);
    piece(logv_.back(), rslope_, 0.0, kInf);
    return h;
}

double PiecewiseLogLinearDensity::cdf(double x) const {
    if (x <= knots_.front())
        return std::exp(logv_.front() + lslope_ * (x - knots_.front())) / lslope_;
    if (x >= knots_.back())
        return 1.0 - std::exp(logv_.back() + rslope_ * (x - knots_.back())) / (-rslope_);
    const size_t i =
        std::upper_bound(knots_.begin(), knots_.end(), x) - knots_.begin() - 1;
    const double part = exact_exp_affine_integral(logv_[i] - slopes_[i] * knots_[i],
                                                  slopes_[i], knots_[i], x);
    return std::min(1.0, knot_cdf_[i] + part);
}

double PiecewiseLogLinearDensity::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile requires u in (0, 1)");
    if (u <= knot_cdf_.front())
        return knots_.front() + (std::log(u * lslope_) - logv_.front()) / lslope_;
    if (u >= knot_cdf_.back())
        return knots_.back() + (std::log((1.0 - u) * (-rslope_)) - logv_.back()) / rslope_;
    const size_t i =
        std::upper_bound(knot_cdf_.begin(), knot_cdf_.end(), u) - knot_cdf_.begin() - 1;
    const double r = u - knot_cdf_[i];
    const double s = slopes_[i];
    if (s == 0.0) return knots_[i] + r * std::exp(-logv_[i]);
    return knots_[i] + std::log1p(r * s * std::exp(-logv_[i])) / s;
}

// ---------------------------------------------------------------------------
// AnalyticDensity

AnalyticDensity AnalyticDensity::gaussian(double mu, double sigma) {
    if (!(sigma > 0.0)) throw DomainError("gaussian needs sigma > 0");
    return {Family::gaussian, mu, sigma, 0.0, 1};
}
AnalyticDensity AnalyticDensity::exponential(double rate) {
    if (!(rate > 0.0)) throw DomainError("exponential needs rate > 0");
    return {Family::exponential, rate, 0.0, 0.0, 1};
}
AnalyticDensity AnalyticDensity::laplace(double location, double scale) {
    if (!(scale > 0.0)) throw DomainError("laplace needs scale > 0");
    return {Family::laplace, location, scale, 0.0, 1};
}
AnalyticDensity AnalyticDensity::uniform(double a, double b) {
    if (!(a < b)) throw DomainError("uniform needs a < b");
    return {Family::uniform, a, b, 0.0, 1};
}
AnalyticDensity AnalyticDensity::logistic(double location, double scale) {
    if (!(scale > 0.0)) throw DomainError("logistic needs scale > 0");
    return {Family::logistic, location, scale, 0.0, 1};
}
AnalyticDensity AnalyticDensity::gamma(double shape, double rate) {
    if (!(shape >= 1.0))
        throw DomainError("gamma needs shape >= 1: smaller shapes are not log-concave");
    if (!(rate > 0.0)) throw DomainError("gamma needs rate > 0");
    return {Family::gamma, shape, rate, 0.0, 1};
}

double AnalyticDensity::log_pdf(double x) const {
    switch (family) {
        case Family::gaussian: {
            const double z = (x - p1) / p2;
            return -0.5 * z * z - std::log(p2) - 0.5 * kLog2Pi;
        }
        case Family::exponential: {
            const double u = orientation * (x - shift);
            return u < 0.0 ? -kInf : std::log(p1) - p1 * u;
        }
        case Family::laplace:
            return -std::fabs(x - p1) / p2 - std::log(2.0 * p2);
        case Family::uniform:
            return (x < p1 || x > p2) ? -kInf : -std::log(p2 - p1);
        case Family::logistic: {
            const double z = std::fabs((x - p1) / p2);
            return -z - 2.0 * std::log1p(std::exp(-z)) - std::log(p2);
        }
        case Family::gamma: {
            const double u = orientation * (x - shift);
            if (u < 0.0) return -kInf;
            if (u == 0.0) return p1 == 1.0 ? std::log(p2) : -kInf;
            return p1 * std::log(p2) + (p1 - 1.0) * std::log(u) - p2 * u - log_gamma(p1);
        }
    }
    throw UsageError("unknown family");
}

double AnalyticDensity::mean() const {
    switch (family) {
        case Family::gaussian: return p1;
        case Family::exponential: return shift + orientation / p1;
        case Family::laplace: return p1;
        case Family::uniform: return 0.5 * (p1 + p2);
        case Family::logistic: return p1;
        case Family::gamma: return shift + orientation * p1 / p2;
    }
    throw UsageError("unknown family");
}

double AnalyticDensity::variance() const {
    switch (family) {
        case Family::gaussian: return p2 * p2;
        case Family::exponential: return 1.0 / (p1 * p1);
        case Family::laplace: return 2.0 * p2 * p2;
        case Family::uniform: return (p2 - p1) * (p2 - p1) / 12.0;
        case Family::logistic: {
            constexpr double kPiSq3 = 3.2898681336964528729;  // pi^2/3
            return kPiSq3 * p2 * p2;
        }
        case Family::gamma: return p1 / (p2 * p2);
    }
    throw UsageError("unknown family");
}

double AnalyticDensity::sigma1() const {
    switch (family) {
        case Family::gaussian: return p2 * std::sqrt(2.0 / 3.14159265358979323846);
        case Family::exponential: return 2.0 / (std::exp(1.0) * p1);
        case Family::laplace: return p2;
        case Family::uniform: return 0.25 * (p2 - p1);
        case Family::logistic: return 2.0 * p2 * std::log(2.0);
        case Family::gamma:
            // E|X − k/λ| = 2 k^k e^{−k} / (Γ(k) λ)
            return std::exp(std::log(2.0) + p1 * std::log(p1) - p1 - log_gamma(p1) -
                            std::log(p2));
    }
    throw UsageError("unknown family");
}

double AnalyticDensity::log_power_mass(double p) const {
    switch (family) {
        case Family::gaussian:
            return (1.0 - p) * (std::log(p2) + 0.5 * kLog2Pi) - 0.5 * std::log(p);
        case Family::exponential: return (p - 1.0) * std::log(p1) - std::log(p);
        case Family::laplace: return (1.0 - p) * std::log(2.0 * p2) - std::log(p);
        case Family::uniform: return (1.0 - p) * std::log(p2 - p1);
        case Family::logistic:
            // ∫ f^p = s^{1−p} B(p, p)
            return (1.0 - p) * std::log(p2) + 2.0 * log_gamma(p) - log_gamma(2.0 * p);
        case Family::gamma:
            return log_gamma(p * (p1 - 1.0) + 1.0) + (p - 1.0) * std::log(p2) -
                   p * log_gamma(p1) - (p * (p1 - 1.0) + 1.0) * std::log(p);
    }
    throw UsageError("unknown family");
}

double AnalyticDensity::mode() const {
    switch (family) {
        case Family::gaussian: return p1;
        case Family::exponential: return shift;
        case Family::laplace: return p1;
        case Family::uniform: return 0.5 * (p1 + p2);
        case Family::logistic: return p1;
        case Family::gamma:
            return p1 == 1.0 ? shift : shift + orientation * (p1 - 1.0) / p2;
    }
    throw UsageError("unknown family");
}

double AnalyticDensity::supnorm() const {
    switch (family) {
        case Family::gaussian: return 1.0 / (p2 * std::sqrt(2.0 * 3.14159265358979323846));
        case Family::exponential: return p1;
        case Family::laplace: return 0.5 / p2;
        case Family::uniform: return 1.0 / (p2 - p1);
        case Family::logistic: return 0.25 / p2;
        case Family::gamma:
            if (p1 == 1.0) return p2;
            return std::exp(std::log(p2) + (p1 - 1.0) * (std::log(p1 - 1.0) - 1.0) -
                            log_gamma(p1));
    }
    throw UsageError("unknown family");
}

double AnalyticDensity::entropy() const {
    switch (family) {
        case Family::gaussian:
            return 0.5 * (1.0 + kLog2Pi) + std::log(p2);
        case Family::exponential: return 1.0 - std::log(p1);
        case Family::laplace: return 1.0 + std::log(2.0 * p2);
        case Family::uniform: return std::log(p2 - p1);
        case Family::logistic: return std::log(p2) + 2.0;
        case Family::gamma:
            return p1 - std::log(p2) + log_gamma(p1) + (1.0 - p1) * digamma(p1);
    }
    throw UsageError("unknown family");
}

double AnalyticDensity::cdf(double x) const {
    switch (family) {
        case Family::gaussian:
            return 0.5 * std::erfc(-(x - p1) / (p2 * std::sqrt(2.0)));
        case Family::exponential: {
            const double u = orientation * (x - shift);
            const double base = u < 0.0 ? 0.0 : -std::expm1(-p1 * u);
            return orientation > 0 ? base : 1.0 - base;
        }
        case Family::laplace: {
            const double z = (x - p1) / p2;
            return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
        }
        case Family::uniform:
            return std::clamp((x - p1) / (p2 - p1), 0.0, 1.0);
        case Family::logistic: {
            const double z = (x - p1) / p2;
            return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z))
                            : std::exp(z) / (1.0 + std::exp(z));
        }
        case Family::gamma: {
            const double u = orientation * (x - shift);
            const double base = u <= 0.0 ? 0.0 : regularized_gamma_p(p1, p2 * u);
            return orientation > 0 ? base : 1.0 - base;
        }
    }
    throw UsageError("unknown family");
}

double AnalyticDensity::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile requires u in (0, 1)");
    switch (family) {
        case Family::gaussian: return p1 + p2 * normal_quantile(u);
        case Family::exponential:
            if (orientation > 0) return shift - std::log1p(-u) / p1;
            return shift + std::log(u) / p1;
        case Family::laplace:
            return u < 0.5 ? p1 + p2 * std::log(2.0 * u)
                           : p1 - p2 * std::log(2.0 * (1.0 - u));
        case Family::uniform: return p1 + u * (p2 - p1);
        case Family::logistic: return p1 + p2 * (std::log(u) - std::log1p(-u));
        case Family::gamma:
            if (orientation > 0) return shift + inverse_regularized_gamma_p(p1, u) / p2;
            return shift - inverse_regularized_gamma_p(p1, 1.0 - u) / p2;
    }
    throw UsageError("unknown family");
}

std::pair<double, double> AnalyticDensity::support() const {
    switch (family) {
        case Family::uniform: return {p1, p2};
        case Family::exponential:
        case Family::gamma:
            return orientation > 0 ? std::pair<double, double>{shift, kInf}
                                   : std::pair<double, double>{-kInf, shift};
        default: return {-kInf, kInf};
    }
}

bool AnalyticDensity::is_symmetric() const {
    switch (family) {
        case Family::gaussian:
        case Family::laplace:
        case Family::uniform:
        case Family::logistic: return true;
        default: return false;
    }
}

// ---------------------------------------------------------------------------
// DensityHandle

DensityHandle DensityHandle::analytic(AnalyticDensity d) {
    DensityHandle h;
    h.symmetric_ = d.is_symmetric();
    h.repr_ = std::move(d);
    return h;
}

DensityHandle DensityHandle::pll(PiecewiseLogLinearDensity d, bool symmetric) {
    if (symmetric) {
        // Declared symmetry is verified, never trusted: mirror log f about the
        // mean at knots, segment midpoints, and one point out in each tail.
        const double c = d.mean();
        std::vector<double> probes = d.knots();
        for (size_t i = 0; i + 1 < d.knots().size(); ++i)
            probes.push_back(0.5 * (d.knots()[i] + d.knots()[i + 1]));
        probes.push_back(d.knots().front() - 1.0);
        probes.push_back(d.knots().back() + 1.0);
        for (double x : probes) {
            if (std::fabs(d.log_pdf(x) - d.log_pdf(2.0 * c - x)) > 1e-10)
                throw UsageError("density declared symmetric but log f mismatches its "
                                 "mirror image at x = " + std::to_string(x));
        }
    }
    DensityHandle h;
    h.symmetric_ = symmetric;
    h.repr_ = std::move(d);
    return h;
}

const PiecewiseLogLinearDensity& DensityHandle::pll() const {
    return std::get<PiecewiseLogLinearDensity>(repr_);
}
const AnalyticDensity& DensityHandle::analytic() const {
    return std::get<AnalyticDensity>(repr_);
}

double DensityHandle::symmetry_center() const {
    if (!symmetric_) throw UsageError("density is not symmetric");
    return mean();
}

double DensityHandle::log_pdf(double x) const {
    return is_pll() ? pll().log_pdf(x) : analytic().log_pdf(x);
}
double DensityHandle::pdf(double x) const { return std::exp(log_pdf(x)); }

double DensityHandle::mean() const {
    return is_pll() ? pll().mean() : analytic().mean();
}

double DensityHandle::variance() const {
    if (!is_pll()) return analytic().variance();
    double m = pll().mean();
    return pll().second_moment() - m * m;
}

std::pair<double, double> DensityHandle::mode_and_supnorm() const {
    if (is_pll()) return {pll().mode(), pll().supnorm()};
    return {analytic().mode(), analytic().supnorm()};
}

std::pair<double, double> DensityHandle::support() const {
    return is_pll() ? std::pair<double, double>{-kInf, kInf} : analytic().support();
}

double DensityHandle::cdf(double x) const {
    return is_pll() ? pll().cdf(x) : analytic().cdf(x);
}
double DensityHandle::quantile(double u) const {
    return is_pll() ? pll().quantile(u) : analytic().quantile(u);
}

DensityHandle DensityHandle::affine_image(double c, double t) const {
    if (c == 0.0 || !std::isfinite(c) || !std::isfinite(t))
        throw UsageError("affine_image needs finite c != 0 and finite t");
    if (is_pll()) {
        const PiecewiseLogLinearDensity& d = pll();
        const size_t k = d.knots().size();
        std::vector<double> kn(k), lv(k);
        for (size_t i = 0; i < k; ++i) {
            const size_t j = c > 0 ? i : k - 1 - i;
            kn[i] = c * d.knots()[j] + t;
            lv[i] = d.log_values()[j] - std::log(std::fabs(c));
        }
        const double ls = (c > 0 ? d.left_slope() : d.right_slope()) / c;
        const double rs = (c > 0 ? d.right_slope() : d.left_slope()) / c;
        return DensityHandle::pll(PiecewiseLogLinearDensity(kn, lv, ls, rs), symmetric_);
    }
    AnalyticDensity d = analytic();
    const double ac = std::fabs(c);
    switch (d.family) {
        case Family::gaussian: return analytic(AnalyticDensity::gaussian(c * d.p1 + t, ac * d.p2));
        case Family::laplace: return analytic(AnalyticDensity::laplace(c * d.p1 + t, ac * d.p2));
        case Family::logistic: return analytic(AnalyticDensity::logistic(c * d.p1 + t, ac * d.p2));
        case Family::uniform: {
            const double a = c * d.p1 + t, b = c * d.p2 + t;
            return analytic(AnalyticDensity::uniform(std::min(a, b), std::max(a, b)));
        }
        case Family::exponential:
        case Family::gamma: {
            d.shift = c * d.shift + t;
            d.orientation = c > 0 ? d.orientation : -d.orientation;
            d.p2 = d.family == Family::gamma ? d.p2 / ac : d.p2;
            d.p1 = d.family == Family::exponential ? d.p1 / ac : d.p1;
            return analytic(d);
        }
    }
    throw UsageError("unknown family");
}

std::vector<double> DensityHandle::quadrature_breakpoints() const {
    if (is_pll()) return pll().knots();
    const AnalyticDensity& d = analytic();
    switch (d.family) {
        case Family::gaussian:
        case Family::logistic:
        case Family::laplace: return {d.p1};
        case Family::uniform: return {d.p1, d.p2};
        case Family::exponential: return {d.shift};
        case Family::gamma: return {d.shift, d.mode()};
    }
    return {};
}

std::string DensityHandle::family_name() const {
    if (is_pll()) return "pll";
    switch (analytic().family) {
        case Family::gaussian: return "gaussian";
        case Family::exponential: return "exponential";
        case Family::laplace: return "laplace";
        case Family::uniform: return "uniform";
        case Family::logistic: return "logistic";
        case Family::gamma: return "gamma";
    }
    return "?";
}

std::string DensityHandle::params_digest() const {
    std::string s = family_name();
    s.push_back(';');
    if (is_pll()) {
        const PiecewiseLogLinearDensity& d = pll();
        for (double v : d.knots()) append_num(s, v);
        for (double v : d.log_values()) append_num(s, v);
        append_num(s, d.left_slope());
        append_num(s, d.right_slope());
    } else {
        const AnalyticDensity& d = analytic();
        append_num(s, d.p1);
        append_num(s, d.p2);
        append_num(s, d.shift);
        append_num(s, d.orientation);
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(s)));
    return std::string(buf);
}

}  // namespace lcn
