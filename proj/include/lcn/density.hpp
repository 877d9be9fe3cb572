#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lcn {

// Exact log-concave density class: log f is piecewise linear with strictly
// positive left tail slope and strictly negative right tail slope, so every
// moment is finite. Interior slopes are derived from (knots, log_values);
// the constructor rejects any slope sequence that is not non-increasing
// (that is precisely log-concavity here) and renormalizes to unit mass.
class PiecewiseLogLinearDensity {
public:
    PiecewiseLogLinearDensity(std::vector<double> knots, std::vector<double> log_values,
                              double left_slope, double right_slope);

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& log_values() const { return logv_; }  // normalized
    const std::vector<double>& interior_slopes() const { return slopes_; }
    double left_slope() const { return lslope_; }
    double right_slope() const { return rslope_; }
    // log-offset that was added to the input log_values to reach unit mass
    double log_norm_constant() const { return log_norm_; }

    double log_pdf(double x) const;
    double mass() const;  // exact segment integrals; 1 up to rounding

    // log ∫ f^p dx, exact per segment (f^p is again piecewise log-linear).
    double log_power_mass(double p) const;
    double mode() const;
    double supnorm() const;

    double mean() const;            // exact
    double second_moment() const;   // exact E[X²]
    double entropy() const;         // exact −∫ f log f (log f affine per segment)

    double cdf(double x) const;
    double quantile(double u) const;  // u ∈ (0,1)

private:
    std::vector<double> knots_, logv_, slopes_;
    double lslope_, rslope_;
    double log_norm_ = 0.0;
    std::vector<double> knot_cdf_;  // CDF at each knot, exact
};

enum class Family { gaussian, exponential, laplace, uniform, logistic, gamma };

// Closed-form catalog. Parameter meaning by family:
//   gaussian(p1=μ, p2=σ>0), exponential(p1=rate λ>0), laplace(p1=location,
//   p2=scale b>0), uniform(p1=a < p2=b), logistic(p1=location, p2=scale>0),
//   gamma(p1=shape k≥1, p2=rate λ>0).
// Affine images stay inside the catalog: symmetric families absorb scale and
// shift into their parameters; exponential and gamma carry an explicit
// orientation (±1) and shift, i.e. X = orientation·X₀ + shift.
struct AnalyticDensity {
    Family family;
    double p1 = 0.0, p2 = 0.0;
    double shift = 0.0;
    int orientation = 1;

    static AnalyticDensity gaussian(double mu, double sigma);
    static AnalyticDensity exponential(double rate);
    static AnalyticDensity laplace(double location, double scale);
    static AnalyticDensity uniform(double a, double b);
    static AnalyticDensity logistic(double location, double scale);
    static AnalyticDensity gamma(double shape, double rate);

    double log_pdf(double x) const;
    double mean() const;
    double variance() const;
    double sigma1() const;          // E|X − E[X]|, closed form
    double log_power_mass(double p) const;  // log ∫ f^p
    double mode() const;
    double supnorm() const;
    double entropy() const;         // differential entropy, closed form
    double cdf(double x) const;
    double quantile(double u) const;
    // support endpoints (±∞ for unbounded sides)
    std::pair<double, double> support() const;
    bool is_symmetric() const;
};

// Tagged union over the two representations plus the symmetry contract used
// by Proposition 1: the flag is declared (or implied by the family), never
// inferred, and is verified against mirrored log-density samples at 1e-10.
class DensityHandle {
public:
    static DensityHandle analytic(AnalyticDensity d);
    static DensityHandle pll(PiecewiseLogLinearDensity d, bool symmetric = false);

    bool is_pll() const { return std::holds_alternative<PiecewiseLogLinearDensity>(repr_); }
    const PiecewiseLogLinearDensity& pll() const;
    const AnalyticDensity& analytic() const;

    bool symmetric() const { return symmetric_; }
    double symmetry_center() const;  // usage error when not symmetric

    double log_pdf(double x) const;
    double pdf(double x) const;
    double mean() const;
    double variance() const;
    std::pair<double, double> mode_and_supnorm() const;
    std::pair<double, double> support() const;
    double cdf(double x) const;
    double quantile(double u) const;

    // Density of c·X + t (c ≠ 0). Catalog members map to exact catalog
    // members, never to an approximation; PLL maps to PLL.
    DensityHandle affine_image(double c, double t) const;

    // Kink/knot locations to hand to adaptive quadrature as breakpoints.
    std::vector<double> quadrature_breakpoints() const;

    std::string family_name() const;    // "gaussian", ..., "pll"
    std::string params_digest() const;  // stable short hex of the parameters

private:
    DensityHandle() = default;
    std::variant<AnalyticDensity, PiecewiseLogLinearDensity> repr_;
    bool symmetric_ = false;
};

// FNV-1a, used for parameter digests and the CLI's manifest digests.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace lcn
