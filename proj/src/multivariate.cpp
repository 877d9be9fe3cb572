#include "lcn/multivariate.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "lcn/errors.hpp"
#include "lcn/inequality_1d.hpp"
#include "lcn/special_functions.hpp"

namespace lcn {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2π)

void append_num(std::string& s, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g;", v);
    s += buf;
}

std::string hex_digest(const std::string& s) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
    return std::string(buf);
}

void check_square(const Eigen::MatrixXd& a, const Eigen::VectorXd& t, int n) {
    if (a.rows() != n || a.cols() != n || t.size() != n)
        throw UsageError("transform shape does not match the density dimension");
}

}  // namespace

MultivariateDensity MultivariateDensity::product(std::vector<DensityHandle> factors) {
    const int n = static_cast<int>(factors.size());
    if (n < 2) throw UsageError("a multivariate density needs at least 2 factors");
    MultivariateDensity f;
    f.n_ = n;
    f.factors_ = std::move(factors);
    f.factor_fns_.assign(f.factors_.begin(), f.factors_.end());
    f.a_ = Eigen::MatrixXd::Identity(n, n);
    f.a_inv_ = f.a_;
    f.t_ = Eigen::VectorXd::Zero(n);
    return f;
}

MultivariateDensity MultivariateDensity::gaussian_nd(Eigen::VectorXd mean,
                                                     Eigen::MatrixXd covariance) {
    const int n = static_cast<int>(mean.size());
    if (n < 2) throw UsageError("a multivariate density needs dimension >= 2");
    if (covariance.rows() != n || covariance.cols() != n)
        throw UsageError("covariance shape does not match the mean vector");
    const double scale = covariance.cwiseAbs().maxCoeff();
    if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw UsageError("covariance must be symmetric");

    Eigen::LLT<Eigen::MatrixXd> llt(covariance);
    if (llt.info() != Eigen::Success)
        throw UsageError("covariance must be positive definite");

    MultivariateDensity f;
    f.n_ = n;
    f.gaussian_ = true;
    f.mu_ = std::move(mean);
    f.sigma_ = std::move(covariance);
    f.chol_l_ = llt.matrixL();
    f.log_det_sigma_ = 2.0 * f.chol_l_.diagonal().array().log().sum();
    return f;
}

MultivariateDensity MultivariateDensity::transformed(const Eigen::MatrixXd& a,
                                                     const Eigen::VectorXd& t) const {
    check_square(a, t, n_);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) throw UsageError("transform matrix is singular");

    if (gaussian_) {
        Eigen::MatrixXd s = a * sigma_ * a.transpose();
        return gaussian_nd(a * mu_ + t, 0.5 * (s + s.transpose()));
    }
    MultivariateDensity f(*this);
    f.a_ = a * a_;
    f.t_ = a * t_ + t;
    Eigen::FullPivLU<Eigen::MatrixXd> lu2(f.a_);
    if (!lu2.isInvertible()) throw UsageError("transform matrix is singular");
    f.a_inv_ = lu2.inverse();
    f.log_abs_det_a_ = std::log(std::fabs(lu2.determinant()));
    return f;
}

const std::vector<DensityHandle>& MultivariateDensity::factors() const {
    if (gaussian_) throw UsageError("gaussian_nd density has no 1-D factors");
    return factors_;
}

double MultivariateDensity::log_pdf(const Eigen::VectorXd& x) const {
    if (x.size() != n_) throw UsageError("point dimension mismatch");
    if (gaussian_) {
        Eigen::VectorXd y = chol_l_.triangularView<Eigen::Lower>().solve(x - mu_);
        return -0.5 * (n_ * kLog2Pi + log_det_sigma_) - 0.5 * y.squaredNorm();
    }
    Eigen::VectorXd z = a_inv_ * (x - t_);
    double s = -log_abs_det_a_;
    for (int i = 0; i < n_; ++i) s += factors_[i].log_pdf(z[i]);
    return s;
}

double MultivariateDensity::log_lp_norm(NormOrder p) const {
    if (p.is_one()) return 0.0;
    const double rp = p.reciprocal();
    if (gaussian_) {
        double s = (rp - 1.0) * 0.5 * (n_ * kLog2Pi + log_det_sigma_);
        if (!p.is_infinite()) s -= 0.5 * n_ * rp * std::log(p.value());
        return s;
    }
    double s = (rp - 1.0) * log_abs_det_a_;
    for (const DensityFunctionals& fn : factor_fns_) s += fn.log_lp_norm(p);
    return s;
}

Eigen::VectorXd MultivariateDensity::mode() const {
    if (gaussian_) return mu_;
    Eigen::VectorXd z(n_);
    for (int i = 0; i < n_; ++i) z[i] = factors_[i].mode_and_supnorm().first;
    return a_ * z + t_;
}

Eigen::VectorXd MultivariateDensity::mean_vector() const {
    if (gaussian_) return mu_;
    Eigen::VectorXd m(n_);
    for (int i = 0; i < n_; ++i) m[i] = factors_[i].mean();
    return a_ * m + t_;
}

Eigen::MatrixXd MultivariateDensity::covariance() const {
    if (gaussian_) return sigma_;
    Eigen::VectorXd v(n_);
    for (int i = 0; i < n_; ++i) v[i] = factors_[i].variance();
    return a_ * v.asDiagonal() * a_.transpose();
}

double MultivariateDensity::log_det_covariance() const {
    if (gaussian_) return log_det_sigma_;
    double s = 2.0 * log_abs_det_a_;
    for (const DensityHandle& f : factors_) s += std::log(f.variance());
    return s;
}

Eigen::VectorXd MultivariateDensity::sample(SplitMix& rng) const {
    Eigen::VectorXd z(n_);
    if (gaussian_) {
        for (int i = 0; i < n_; ++i) z[i] = normal_quantile(rng.uniform01());
        return mu_ + chol_l_ * z;
    }
    for (int i = 0; i < n_; ++i) z[i] = factors_[i].quantile(rng.uniform01());
    return a_ * z + t_;
}

std::string MultivariateDensity::family_name() const {
    return gaussian_ ? "gaussian_nd" : "product";
}

std::string MultivariateDensity::params_digest() const {
    std::string s = family_name();
    s.push_back(';');
    if (gaussian_) {
        for (int i = 0; i < n_; ++i) append_num(s, mu_[i]);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) append_num(s, sigma_(i, j));
    } else {
        for (const DensityHandle& f : factors_) {
            s += f.params_digest();
            s.push_back(';');
        }
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) append_num(s, a_(i, j));
        for (int i = 0; i < n_; ++i) append_num(s, t_[i]);
    }
    return hex_digest(s);
}

std::string MultivariateDensity::sigma_digest() const {
    Eigen::MatrixXd s = covariance();
    std::string bytes;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) append_num(bytes, s(i, j));
    return hex_digest(bytes);
}

FunctionalValue lp_norm_nd(const MultivariateDensity& f, NormOrder p) {
    FunctionalValue v;
    v.kind = FunctionalKind::lp_norm;
    v.order = p.display_value();
    v.value = f.lp_norm(p);
    v.error_estimate = 1e-13 * (std::fabs(v.value) + 1e-300);
    v.method = FunctionalMethod::closed_form;
    if (!f.is_gaussian())
        for (const DensityHandle& g : f.factors())
            if (g.is_pll()) v.method = FunctionalMethod::exact_segment;
    return v;
}

InequalityVerdict check_theorem2(const MultivariateDensity& f, NormOrder p, NormOrder q) {
    const int n = f.dim();
    if (n < 2) throw UsageError("check_theorem2 is stated for n >= 2");
    const double rp = p.reciprocal(), rq = q.reciprocal();
    const double log_rhs = (1.0 - rq) * std::log(c_n(n)) + (1.0 - rp) * std::log(d_n(n)) +
                           0.5 * (rp - rq) * f.log_det_covariance() + f.log_lp_norm(q);
    InequalityVerdict v =
        verdict_from_logs(ClaimId::theorem2, f.log_lp_norm(p), log_rhs, kClosedFormTol);
    v.p = p.display_value();
    v.q = q.display_value();
    return v;
}

InequalityVerdict lemma2_verdict_from(int n, NormOrder p, double log_lp_norm,
                                      double log_det_sigma, double tol) {
    const double log_rhs =
        (1.0 - p.reciprocal()) * (std::log(c_n(n)) + 0.5 * log_det_sigma) + log_lp_norm;
    InequalityVerdict v = verdict_from_logs(ClaimId::lemma2, 0.0, log_rhs, tol);
    v.p = p.display_value();
    return v;
}

InequalityVerdict check_lemma2(const MultivariateDensity& f, NormOrder p) {
    return lemma2_verdict_from(f.dim(), p, f.log_lp_norm(p), f.log_det_covariance(),
                               kClosedFormTol);
}

InequalityVerdict check_lemma4_nd(const MultivariateDensity& f) {
    const double log_lhs = f.log_lp_norm(NormOrder::infinity());
    const double log_rhs =
        f.dim() * std::log(2.0) + 2.0 * f.log_lp_norm(NormOrder::finite(2.0));
    return verdict_from_logs(ClaimId::lemma4_nd, log_lhs, log_rhs, kClosedFormTol);
}

InequalityVerdict check_lemma6(const MultivariateDensity& f) {
    const int n = f.dim();
    if (n < 2) throw UsageError("check_lemma6 is stated for n >= 2");
    const double log_rhs = std::log(d_n(n)) - 0.5 * f.log_det_covariance();
    return verdict_from_logs(ClaimId::lemma6, f.log_lp_norm(NormOrder::infinity()),
                             log_rhs, kClosedFormTol);
}

VerdictRecord to_record(const InequalityVerdict& v, const MultivariateDensity& f) {
    VerdictRecord r;
    r.claim_id = v.claim_id;
    r.family = f.family_name();
    r.params_digest = f.params_digest();
    r.p = v.p;
    r.q = v.q;
    r.alpha = v.alpha;
    r.lhs = v.lhs;
    r.rhs = v.rhs;
    r.margin = v.margin;
    r.tightness = v.tightness;
    r.holds = v.holds;
    r.n = f.dim();
    r.sigma_digest = f.sigma_digest();
    return r;
}

McNormCheck mc_validate_norm(const MultivariateDensity& f, NormOrder p,
                             std::size_t n_samples, std::uint64_t seed) {
    if (p.is_infinite()) throw UsageError("mc_validate_norm needs finite p");
    if (n_samples < 2) throw UsageError("mc_validate_norm needs at least 2 samples");
    const double pv = p.value();

    SplitMix rng(derive_stream_seed(seed, 0x6d63u));  // "mc" sub-stream
    long double sum = 0.0L, sumsq = 0.0L;
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double v = std::exp((pv - 1.0) * f.log_pdf(f.sample(rng)));
        sum += v;
        sumsq += static_cast<long double>(v) * v;
    }
    const double nn = static_cast<double>(n_samples);
    const double mean = static_cast<double>(sum / n_samples);
    double var = static_cast<double>((sumsq - sum * sum / n_samples) / (nn - 1.0));
    var = std::max(var, 0.0);
    const double se = std::sqrt(var / nn);
    constexpr double kZ99 = 2.5758293035489004;  // Φ⁻¹(0.995)

    McNormCheck c;
    c.exact = std::exp(pv * f.log_lp_norm(p));
    c.estimate = mean;
    c.std_error = se;
    c.ci_low = mean - kZ99 * se;
    c.ci_high = mean + kZ99 * se;
    c.n_samples = n_samples;
    c.contains_exact = c.ci_low <= c.exact && c.exact <= c.ci_high;
    return c;
}

}  // namespace lcn
