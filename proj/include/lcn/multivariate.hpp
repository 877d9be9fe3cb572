#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lcn/density.hpp"
#include "lcn/functionals.hpp"
#include "lcn/norm_order.hpp"
#include "lcn/rng.hpp"
#include "lcn/verdict.hpp"

namespace lcn {

// Density on ℝⁿ (n ≥ 2) in one of two exact forms:
//   product:     F(x) = Π f_i(z_i) / |det A|  with  x = A·z + t,
//                each f_i a 1-D DensityHandle, A invertible;
//   gaussian_nd: N(μ, Σ) with Σ symmetric positive definite.
// Affine maps of a gaussian fold back into (μ, Σ); affine maps of a product
// compose into (A, t), so both Lp norms and the covariance stay closed form.
// There is deliberately no n-D cubature here — the Monte Carlo check below is
// the only sampled quantity, and it is used to validate, never to certify.
class MultivariateDensity {
public:
    static MultivariateDensity product(std::vector<DensityHandle> factors);
    static MultivariateDensity gaussian_nd(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

    // Density of A·X + t.
    MultivariateDensity transformed(const Eigen::MatrixXd& a, const Eigen::VectorXd& t) const;

    int dim() const { return n_; }
    bool is_gaussian() const { return gaussian_; }
    const std::vector<DensityHandle>& factors() const;

    double log_pdf(const Eigen::VectorXd& x) const;
    double pdf(const Eigen::VectorXd& x) const { return std::exp(log_pdf(x)); }

    // log ‖F‖_p, exact: Fubini over the factors plus |det A|^{1/p−1}, or the
    // gaussian closed form. p = ∞ reads the sup from the transformed mode.
    double log_lp_norm(NormOrder p) const;
    double lp_norm(NormOrder p) const { return std::exp(log_lp_norm(p)); }
    double supnorm() const { return lp_norm(NormOrder::infinity()); }
    Eigen::VectorXd mode() const;

    Eigen::VectorXd mean_vector() const;
    Eigen::MatrixXd covariance() const;   // A·diag(Var f_i)·Aᵀ or Σ, exact
    double log_det_covariance() const;

    Eigen::VectorXd sample(SplitMix& rng) const;  // inverse-CDF per factor, then A,t

    std::string family_name() const;    // "product" or "gaussian_nd"
    std::string params_digest() const;
    std::string sigma_digest() const;   // digest of the covariance entries

private:
    MultivariateDensity() = default;

    int n_ = 0;
    bool gaussian_ = false;
    // product branch
    std::vector<DensityHandle> factors_;
    std::vector<DensityFunctionals> factor_fns_;
    Eigen::MatrixXd a_, a_inv_;
    Eigen::VectorXd t_;
    double log_abs_det_a_ = 0.0;
    // gaussian branch
    Eigen::VectorXd mu_;
    Eigen::MatrixXd sigma_, chol_l_;
    double log_det_sigma_ = 0.0;
};

// ‖F‖_p ≤ C(n)^{1−1/q} D(n)^{1−1/p} |Σ|^{(1/2)(1/p−1/q)} ‖F‖_q,  1 ≤ p ≤ q ≤ ∞.
InequalityVerdict check_theorem2(const MultivariateDensity& f, NormOrder p, NormOrder q);

// 1 ≤ (C(n) |Σ|^{1/2})^{1−1/p} ‖F‖_p for p > 1 (any pdf with finite Σ, not
// just log-concave ones). The ingredient-level form exists so callers can
// feed norms/covariances of densities this module cannot represent.
InequalityVerdict lemma2_verdict_from(int n, NormOrder p, double log_lp_norm,
                                      double log_det_sigma, double tol);
InequalityVerdict check_lemma2(const MultivariateDensity& f, NormOrder p);

// ‖F‖_∞ ≤ 2ⁿ ‖F‖₂²  and  ‖F‖_∞ ≤ D(n) / |Σ|^{1/2}.
InequalityVerdict check_lemma4_nd(const MultivariateDensity& f);
InequalityVerdict check_lemma6(const MultivariateDensity& f);

VerdictRecord to_record(const InequalityVerdict& v, const MultivariateDensity& f);

// Monte Carlo cross-check of ∫ F^p = E_F[F^{p−1}] for finite p ≥ 1, sampling
// from F itself (inverse CDF through the factor quantiles, or μ + L·ξ for the
// gaussian). Deterministic for a given (seed, n_samples).
struct McNormCheck {
    double exact;         // exp(p·log‖F‖_p)
    double estimate;
    double std_error;
    double ci_low, ci_high;  // 99% two-sided
    std::size_t n_samples;
    bool contains_exact;
};

McNormCheck mc_validate_norm(const MultivariateDensity& f, NormOrder p,
                             std::size_t n_samples, std::uint64_t seed);

}  // namespace lcn
