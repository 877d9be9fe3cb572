#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "lcn/density.hpp"
#include "lcn/errors.hpp"
#include "lcn/multivariate.hpp"
#include "lcn/quadrature.hpp"
#include "lcn/rng.hpp"
#include "lcn/special_functions.hpp"

using doctest::Approx;
using lcn::AnalyticDensity;
using lcn::DensityHandle;
using lcn::MultivariateDensity;
using lcn::NormOrder;

namespace {

MultivariateDensity std_gaussian2() {
    return MultivariateDensity::gaussian_nd(Eigen::Vector2d::Zero(),
                                            Eigen::Matrix2d::Identity());
}

MultivariateDensity exp_exp() {
    return MultivariateDensity::product({
        DensityHandle::analytic(AnalyticDensity::exponential(1.0)),
        DensityHandle::analytic(AnalyticDensity::exponential(1.0)),
    });
}

MultivariateDensity skew_product() {
    MultivariateDensity base = MultivariateDensity::product({
        DensityHandle::analytic(AnalyticDensity::gamma(3.0, 2.0)),
        DensityHandle::analytic(AnalyticDensity::logistic(0.0, 1.0)),
    });
    Eigen::Matrix2d a;
    a << 1.2, -0.4, 0.3, 0.9;
    Eigen::Vector2d t(0.5, -2.0);
    return base.transformed(a, t);
}

}  // namespace

TEST_SUITE("multivariate") {

TEST_CASE("standard gaussian on R^2: closed-form norms") {
    MultivariateDensity f = std_gaussian2();
    CHECK(f.dim() == 2);
    CHECK(f.is_gaussian());
    CHECK(f.supnorm() == Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
    // ∫F² = (2π)^{-1}·2^{-1}
    CHECK(std::exp(2.0 * f.log_lp_norm(NormOrder::finite(2.0))) ==
          Approx(1.0 / (4.0 * M_PI)).epsilon(1e-14));
    CHECK(f.log_lp_norm(NormOrder::finite(1.0)) == 0.0);
    CHECK(f.mode().norm() == 0.0);
    CHECK(f.log_det_covariance() == Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("product of two unit exponentials sits exactly on lemma 4") {
    MultivariateDensity f = exp_exp();
    CHECK_FALSE(f.is_gaussian());
    CHECK(f.supnorm() == 1.0);
    CHECK(std::exp(2.0 * f.log_lp_norm(NormOrder::finite(2.0))) == Approx(0.25).epsilon(1e-15));
    lcn::InequalityVerdict v = lcn::check_lemma4_nd(f);
    CHECK(v.holds);
    CHECK(v.margin == 0.0);  // ‖F‖_∞ = 2²‖F‖₂² = 1, cancelling in log space
    CHECK(lcn::check_lemma6(f).holds);
}

TEST_CASE("affine determinant scaling of the norms is exact") {
    MultivariateDensity f = std_gaussian2();
    MultivariateDensity g = f.transformed(2.0 * Eigen::Matrix2d::Identity(),
                                          Eigen::Vector2d::Zero());
    for (double p : {1.5, 2.0, 8.0}) {
        CAPTURE(p);
        NormOrder np = NormOrder::finite(p);
        CHECK(g.log_lp_norm(np) - f.log_lp_norm(np) ==
              Approx((1.0 / p - 1.0) * std::log(4.0)).epsilon(1e-13));
    }
    // sup scales by 1/|det A|
    CHECK(g.supnorm() == Approx(f.supnorm() / 4.0).epsilon(1e-13));
}

TEST_CASE("mean and covariance transform as A mu + t and A Sigma A^T") {
    MultivariateDensity base = MultivariateDensity::product({
        DensityHandle::analytic(AnalyticDensity::gamma(3.0, 2.0)),
        DensityHandle::analytic(AnalyticDensity::logistic(0.0, 1.0)),
    });
    Eigen::Matrix2d a;
    a << 1.2, -0.4, 0.3, 0.9;
    Eigen::Vector2d t(0.5, -2.0);
    MultivariateDensity g = base.transformed(a, t);

    Eigen::Vector2d want_mean = a * base.mean_vector() + t;
    Eigen::Matrix2d want_cov = a * base.covariance() * a.transpose();
    CHECK((g.mean_vector() - want_mean).norm() <= 1e-14 * (1.0 + want_mean.norm()));
    CHECK((g.covariance() - want_cov).norm() <= 1e-14 * want_cov.norm());

    // Composing two transforms is the same as transforming once.
    Eigen::Matrix2d b;
    b << 0.7, 0.1, -0.2, 1.1;
    Eigen::Vector2d s(1.0, 1.0);
    MultivariateDensity twice = g.transformed(b, s);
    MultivariateDensity once = base.transformed(b * a, b * t + s);
    CHECK((twice.mean_vector() - once.mean_vector()).norm() <= 1e-12);
    CHECK(twice.log_lp_norm(NormOrder::finite(2.0)) ==
          Approx(once.log_lp_norm(NormOrder::finite(2.0))).epsilon(1e-12));
}

TEST_CASE("log_pdf agrees with the defining formulas") {
    // product branch: F(x) = Π f_i(z_i)/|det A|, z = A⁻¹(x − t)
    MultivariateDensity g = skew_product();
    Eigen::Matrix2d a;
    a << 1.2, -0.4, 0.3, 0.9;
    Eigen::Vector2d t(0.5, -2.0);
    DensityHandle f1 = DensityHandle::analytic(AnalyticDensity::gamma(3.0, 2.0));
    DensityHandle f2 = DensityHandle::analytic(AnalyticDensity::logistic(0.0, 1.0));
    const double log_det = std::log(std::fabs(a.determinant()));
    for (double x1 : {0.4, 1.7}) {
        for (double x2 : {-2.5, -0.3}) {
            Eigen::Vector2d x(x1, x2);
            Eigen::Vector2d z = a.inverse() * (x - t);
            if (z[0] <= 0.0) continue;  // outside the gamma factor's support
            const double want = f1.log_pdf(z[0]) + f2.log_pdf(z[1]) - log_det;
            CHECK(g.log_pdf(x) == Approx(want).epsilon(1e-12));
        }
    }

    // gaussian branch vs the dense quadratic form
    Eigen::Vector2d mu(1.0, -2.0);
    Eigen::Matrix2d sigma;
    sigma << 2.0, 0.5, 0.5, 1.0;
    MultivariateDensity gs = MultivariateDensity::gaussian_nd(mu, sigma);
    Eigen::Vector2d x(0.3, 0.9);
    const double quad = (x - mu).transpose() * sigma.inverse() * (x - mu);
    const double want =
        -0.5 * (2.0 * std::log(2.0 * M_PI) + std::log(sigma.determinant()) + quad);
    CHECK(gs.log_pdf(x) == Approx(want).epsilon(1e-12));
}

TEST_CASE("theorem 2: holds, exact at p = q = 1, tightness is affine invariant") {
    std::vector<MultivariateDensity> fs = {std_gaussian2(), exp_exp(), skew_product()};
    std::vector<NormOrder> orders = {NormOrder::finite(1.0), NormOrder::finite(2.0),
                                     NormOrder::finite(8.0), NormOrder::infinity()};
    for (const auto& f : fs) {
        CAPTURE(f.family_name());
        for (std::size_t i = 0; i < orders.size(); ++i)
            for (std::size_t j = i; j < orders.size(); ++j)
                CHECK(lcn::check_theorem2(f, orders[i], orders[j]).holds);
        CHECK(lcn::check_theorem2(f, NormOrder::finite(1.0), NormOrder::finite(1.0)).margin ==
              0.0);
    }

    // tightness is invariant under A·X + t: both sides scale by |det A|^{1/p−1}.
    MultivariateDensity f = skew_product();
    const double base =
        lcn::check_theorem2(f, NormOrder::finite(2.0), NormOrder::infinity()).tightness;
    lcn::SplitMix rng(99);
    for (int k = 0; k < 5; ++k) {
        Eigen::Matrix2d a;
        a << rng.uniform(0.5, 2.0), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
            rng.uniform(0.5, 2.0);
        Eigen::Vector2d t(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
        MultivariateDensity g = f.transformed(a, t);
        CHECK(lcn::check_theorem2(g, NormOrder::finite(2.0), NormOrder::infinity()).tightness ==
              Approx(base).epsilon(1e-10));
    }
}

TEST_CASE("lemma 2 holds with exact equality at p = 1; no log-concavity needed") {
    for (const auto& f : {std_gaussian2(), exp_exp(), skew_product()}) {
        CAPTURE(f.family_name());
        for (double p : {1.5, 2.0, 8.0}) CHECK(lcn::check_lemma2(f, NormOrder::finite(p)).holds);
        CHECK(lcn::check_lemma2(f, NormOrder::finite(1.0)).margin == 0.0);
        CHECK(lcn::check_lemma2(f, NormOrder::infinity()).holds);
    }

    // A strongly bimodal product density (NOT log-concave, so it cannot be a
    // MultivariateDensity) still satisfies Lemma 2 — fed in by ingredients.
    // F(x, y) = g(x)g(y) with g an equal mixture of N(±3, 1): Fubini gives
    // ∫F^p = (∫g^p)² and Σ = diag(1 + 9, 1 + 9).
    auto g = [](double x) {
        auto phi = [](double z) { return std::exp(-z * z / 2.0) / std::sqrt(2.0 * M_PI); };
        return 0.5 * phi(x - 3.0) + 0.5 * phi(x + 3.0);
    };
    const double inf = std::numeric_limits<double>::infinity();
    for (double p : {1.5, 2.0, 4.0}) {
        CAPTURE(p);
        const double int_gp =
            lcn::adaptive_integrate([&](double x) { return std::pow(g(x), p); }, -inf, inf)
                .value;
        const double log_lp_f = 2.0 * std::log(int_gp) / p;
        const double log_det = 2.0 * std::log(10.0);
        lcn::InequalityVerdict v =
            lcn::lemma2_verdict_from(2, NormOrder::finite(p), log_lp_f, log_det, 1e-6);
        CHECK(v.holds);
    }
}

TEST_CASE("monte carlo validation brackets the exact power integral") {
    MultivariateDensity f = std_gaussian2();
    lcn::McNormCheck c = lcn::mc_validate_norm(f, NormOrder::finite(2.0), 100000, 7);
    CHECK(c.exact == Approx(1.0 / (4.0 * M_PI)).epsilon(1e-12));
    CHECK(c.n_samples == 100000);
    CHECK(c.std_error > 0.0);
    CHECK(c.ci_low < c.ci_high);
    CHECK(c.contains_exact);

    // deterministic in the seed, sensitive to it
    lcn::McNormCheck c2 = lcn::mc_validate_norm(f, NormOrder::finite(2.0), 100000, 7);
    CHECK(c2.estimate == c.estimate);
    CHECK(c2.ci_low == c.ci_low);
    lcn::McNormCheck c3 = lcn::mc_validate_norm(f, NormOrder::finite(2.0), 100000, 8);
    CHECK(c3.estimate != c.estimate);

    // p = 1 integrates the constant 1: zero-width interval, still correct
    lcn::McNormCheck c1 = lcn::mc_validate_norm(f, NormOrder::finite(1.0), 1000, 3);
    CHECK(c1.estimate == 1.0);
    CHECK(c1.contains_exact);

    // a product case, too
    lcn::McNormCheck cp = lcn::mc_validate_norm(skew_product(), NormOrder::finite(2.0),
                                                100000, 11);
    CHECK(cp.contains_exact);

    CHECK_THROWS_AS(lcn::mc_validate_norm(f, NormOrder::infinity(), 1000, 0),
                    lcn::UsageError);
    CHECK_THROWS_AS(lcn::mc_validate_norm(f, NormOrder::finite(2.0), 1, 0), lcn::UsageError);
}

TEST_CASE("sampling matches the stated mean to Monte Carlo accuracy") {
    Eigen::Vector2d mu(1.0, -2.0);
    Eigen::Matrix2d sigma;
    sigma << 2.0, 0.5, 0.5, 1.0;
    MultivariateDensity f = MultivariateDensity::gaussian_nd(mu, sigma);
    lcn::SplitMix rng(123);
    Eigen::Vector2d acc = Eigen::Vector2d::Zero();
    const int n = 20000;
    for (int i = 0; i < n; ++i) acc += f.sample(rng);
    acc /= n;
    CHECK((acc - mu).norm() < 0.05);

    lcn::SplitMix rng2(123);
    Eigen::Vector2d first = f.sample(rng2);
    lcn::SplitMix rng3(123);
    CHECK((f.sample(rng3) - first).norm() == 0.0);
}

TEST_CASE("records carry the dimension and covariance digest") {
    MultivariateDensity f = skew_product();
    lcn::VerdictRecord r = lcn::to_record(lcn::check_theorem2(f, NormOrder::finite(2.0),
                                                              NormOrder::infinity()),
                                          f);
    CHECK(r.n == 2);
    CHECK(r.family == "product");
    CHECK_FALSE(r.sigma_digest.empty());
    CHECK(r.holds);

    lcn::VerdictRecord rg = lcn::to_record(lcn::check_lemma6(std_gaussian2()), std_gaussian2());
    CHECK(rg.family == "gaussian_nd");
    CHECK(rg.n == 2);

    // same covariance → same digest, different → different
    CHECK(lcn::to_record(lcn::check_lemma6(f), f).sigma_digest == r.sigma_digest);
    CHECK(rg.sigma_digest != r.sigma_digest);
}

TEST_CASE("three-dimensional cases work end to end") {
    Eigen::Vector3d mu(0.0, 1.0, -1.0);
    Eigen::Matrix3d sigma;
    sigma << 1.0, 0.2, 0.0, 0.2, 2.0, -0.3, 0.0, -0.3, 1.5;
    MultivariateDensity g3 = MultivariateDensity::gaussian_nd(mu, sigma);
    CHECK(g3.dim() == 3);
    CHECK(lcn::check_theorem2(g3, NormOrder::finite(1.5), NormOrder::finite(8.0)).holds);
    CHECK(lcn::check_lemma4_nd(g3).holds);
    CHECK(lcn::check_lemma6(g3).holds);

    MultivariateDensity p3 = MultivariateDensity::product({
        DensityHandle::analytic(AnalyticDensity::exponential(2.0)),
        DensityHandle::analytic(AnalyticDensity::gaussian(0.0, 1.0)),
        DensityHandle::analytic(AnalyticDensity::laplace(0.0, 1.0)),
    });
    CHECK(p3.dim() == 3);
    CHECK(lcn::check_theorem2(p3, NormOrder::finite(2.0), NormOrder::infinity()).holds);
    CHECK(lcn::check_lemma2(p3, NormOrder::finite(3.0)).holds);
    // ‖F‖₁ = 1 for the product branch as well, exactly.
    CHECK(p3.log_lp_norm(NormOrder::finite(1.0)) == 0.0);
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(MultivariateDensity::product(
                        {DensityHandle::analytic(AnalyticDensity::gaussian(0.0, 1.0))}),
                    lcn::UsageError);
    Eigen::Matrix2d bad;
    bad << 1.0, 2.0, 2.0, 1.0;  // symmetric but indefinite
    CHECK_THROWS_AS(MultivariateDensity::gaussian_nd(Eigen::Vector2d::Zero(), bad),
                    lcn::UsageError);
    Eigen::Matrix2d asym;
    asym << 1.0, 0.5, -0.5, 1.0;
    CHECK_THROWS_AS(MultivariateDensity::gaussian_nd(Eigen::Vector2d::Zero(), asym),
                    lcn::UsageError);
    // singular transform
    MultivariateDensity f = exp_exp();
    Eigen::Matrix2d sing;
    sing << 1.0, 1.0, 1.0, 1.0;
    CHECK_THROWS_AS(f.transformed(sing, Eigen::Vector2d::Zero()), lcn::UsageError);
    // factors() is a product-branch accessor
    CHECK_THROWS_AS(std_gaussian2().factors(), lcn::UsageError);
    CHECK(f.factors().size() == 2);
}

}  // TEST_SUITE
