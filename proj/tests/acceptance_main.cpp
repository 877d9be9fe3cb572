// Acceptance gate: every criterion the suite ships under, one line each.
// Runs release-mode, no test framework — failures print [FAIL] with the
// offending numbers and the binary exits 1.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lcn/density.hpp"
#include "lcn/functionals.hpp"
#include "lcn/generator.hpp"
#include "lcn/inequality_1d.hpp"
#include "lcn/multivariate.hpp"
#include "lcn/norm_order.hpp"
#include "lcn/quadrature.hpp"
#include "lcn/rng.hpp"
#include "lcn/search.hpp"
#include "lcn/special_functions.hpp"
#include "lcn/sweep.hpp"
#include "lcn/verdict.hpp"

namespace {

int g_failures = 0;

struct Criterion {
    explicit Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)), start_(clock_t::now()) {}

    void check(bool ok, const std::string& detail) {
        if (!ok) {
            failed_details_.push_back(detail);
        }
    }

    double seconds() const {
        return std::chrono::duration<double>(clock_t::now() - start_).count();
    }

    // Prints the one pass/fail line; returns pass/fail for chaining.
    bool finish(const std::string& summary) {
        const double dt = seconds();
        if (failed_details_.empty()) {
            std::printf("[PASS] %d. %s: %s (%.2fs)\n", number_, title_.c_str(),
                        summary.c_str(), dt);
            return true;
        }
        ++g_failures;
        std::printf("[FAIL] %d. %s: %s (%.2fs)\n", number_, title_.c_str(), summary.c_str(),
                    dt);
        for (const std::string& d : failed_details_)
            std::printf("       %s\n", d.c_str());
        return false;
    }

private:
    using clock_t = std::chrono::steady_clock;
    int number_;
    std::string title_;
    clock_t::time_point start_;
    std::vector<std::string> failed_details_;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// 1. Constant reproduction.

void criterion1() {
    Criterion c(1, "constants");
    const double c2 = lcn::c_alpha(2.0);
    const double d2 = lcn::d_n(2);
    const double c2_ref = std::sqrt(2.0 * M_PI * std::exp(1.0));
    const double d2_ref = std::exp(2.0) / (2.0 * std::sqrt(2.0));
    c.check(std::fabs(c2 - 4.1327313541) <= 1e-10, fmt("C_2 = %.12f off pin", c2));
    c.check(std::fabs(c2 - c2_ref) <= 1e-12, fmt("C_2 = %.15f vs sqrt(2*pi*e)", c2));
    c.check(std::fabs(d2 - d2_ref) <= 1e-10, fmt("D(2) = %.12f vs e^2/(2*sqrt(2))", d2));
    c.check(c.seconds() < 1.0, fmt("runtime %.3fs exceeds 1s", c.seconds()));
    c.finish(fmt("C_2 = %.10f, D(2) = %.10f", c2, d2));
}

// ---------------------------------------------------------------------------
// 2. Soundness sweep: catalog + 1000 generated densities, full grid, all
//    1-D claims, zero violations.

void criterion2() {
    Criterion c(2, "soundness sweep");
    std::vector<lcn::DensityHandle> densities = lcn::catalog_densities();
    lcn::GeneratorConfig cfg;
    cfg.seed = 2026;
    for (lcn::DensityHandle& f : lcn::generate_batch(cfg, 1000))
        densities.push_back(std::move(f));

    const lcn::SweepSummary s =
        lcn::run_1d_sweep(densities, lcn::default_grid(), lcn::all_1d_claims(), nullptr);
    c.check(s.violations == 0, fmt("%g violations", double(s.violations)));
    c.check(s.nonconvergences == 0, fmt("%g non-convergences", double(s.nonconvergences)));
    c.check(s.records > 100000, fmt("only %g records", double(s.records)));
    c.check(c.seconds() < 600.0, fmt("runtime %.1fs exceeds 10 min", c.seconds()));
    c.finish(fmt("%.0f verdicts on 1018 densities, 0 violations, worst margin %.2e",
                 double(s.records), s.worst_relative_margin));
}

// ---------------------------------------------------------------------------
// 3. Equality regressions at 1e-8 absolute margin.

void criterion3() {
    Criterion c(3, "equality cases");
    using lcn::NormOrder;

    lcn::DensityFunctionals expo(
        lcn::DensityHandle::analytic(lcn::AnalyticDensity::exponential(1.0)));
    const double sup_sigma = expo.supnorm() * expo.sigma_alpha(2.0);
    c.check(std::fabs(sup_sigma - 1.0) <= 1e-8,
            fmt("exponential |f|_inf*sigma = %.12f", sup_sigma));

    const lcn::InequalityVerdict l4 = lcn::check_lemma4(expo);
    c.check(std::fabs(l4.margin) <= 1e-8,
            fmt("exponential lemma4 margin %.3e", l4.margin));

    lcn::DensityFunctionals gauss(
        lcn::DensityHandle::analytic(lcn::AnalyticDensity::gaussian(0.0, 1.0)));
    const auto [c2lo, c2up] = lcn::check_corollary2(gauss, 2.0);
    c.check(std::fabs(c2up.margin) <= 1e-8,
            fmt("gaussian corollary2 upper margin %.3e", c2up.margin));
    const double h = gauss.diff_entropy();
    const double log_c2_sigma = std::log(lcn::c_alpha(2.0) * gauss.sigma_alpha(2.0));
    c.check(std::fabs(h - log_c2_sigma) <= 1e-8,
            fmt("gaussian h = %.12f vs log(C_2 sigma) = %.12f", h, log_c2_sigma));
    (void)c2lo;

    lcn::DensityFunctionals lap(
        lcn::DensityHandle::analytic(lcn::AnalyticDensity::laplace(0.0, 1.0)));
    const lcn::InequalityVerdict e26 = lcn::check_symmetric_density_bound(lap, 1.0);
    c.check(std::fabs(e26.margin) <= 1e-8, fmt("laplace eq26 margin %.3e", e26.margin));

    lcn::GeneratorConfig cfg;
    cfg.seed = 77;
    lcn::DensityFunctionals pll(lcn::generate(cfg, 0));
    for (lcn::DensityFunctionals* f : {&expo, &gauss, &lap, &pll}) {
        const lcn::InequalityVerdict l3 = lcn::check_lemma3(*f, NormOrder::infinity());
        c.check(l3.margin == 0.0, fmt("lemma3 margin at p=inf %.3e != 0", l3.margin));
    }
    c.finish("exponential, gaussian, laplace and lemma3 equalities all inside 1e-8");
}

// ---------------------------------------------------------------------------
// 4. Proof intermediates: Lemma 1's V and the difference-density identity.

void criterion4() {
    Criterion c(4, "proof intermediates");
    lcn::GeneratorConfig cfg;
    cfg.seed = 424242;
    const std::vector<lcn::DensityHandle> densities = lcn::generate_batch(cfg, 50);

    double min_v = kInf, max_ratio = 0.0;
    for (const lcn::DensityHandle& f : densities) {
        lcn::DensityFunctionals fns(f);
        for (double p : {1.5, 2.0, 4.0}) {
            for (double alpha : {1.0, 2.0, 3.0}) {
                const lcn::Lemma1ProofSteps s =
                    lcn::check_lemma1_proof_steps(fns, lcn::NormOrder::finite(p), alpha);
                min_v = std::min(min_v, s.v);
                max_ratio = std::max(max_ratio, s.v / s.upper_bound);
                c.check(s.v >= 1.0 - 1e-8,
                        fmt("V = %.12f < 1 at p=%g alpha=%g", s.v, p, alpha));
                c.check(s.v <= s.upper_bound * (1.0 + 1e-8),
                        fmt("V = %.12f above bound %.12f", s.v, s.upper_bound));
            }
        }
    }

    double worst_identity = 0.0;
    for (const lcn::DensityHandle& f : densities) {
        lcn::DensityFunctionals fns(f);
        const lcn::DifferenceDensityReport r = lcn::check_difference_density_steps(fns, 2.0);
        worst_identity =
            std::max(worst_identity, std::fabs(r.rms_diff - r.sqrt2_sigma) /
                                         std::max(1.0, r.sqrt2_sigma));
        c.check(r.f0_matches, "f_{X-Y}(0) != |f|_2^2");
        c.check(r.symmetric_ok, fmt("asymmetry %.3e", r.max_asymmetry));
        c.check(r.jensen_ok, "Jensen moment step failed");
        c.check(r.alpha2_identity_ok,
                fmt("E|X-Y|^2 = %.12f vs 2 sigma^2 = %.12f", r.rms_diff * r.rms_diff,
                    r.sqrt2_sigma * r.sqrt2_sigma));
    }
    c.finish(fmt("min V = %.9f, max V/bound = %.9f, worst alpha=2 identity error %.2e",
                 min_v, max_ratio, worst_identity));
}

// ---------------------------------------------------------------------------
// 5. Oracle agreement: library value (closed form where one exists),
//    exact segment sums, adaptive quadrature, Riemann oracle.

double adaptive_quantity(const lcn::DensityHandle& f, const lcn::Integrand& g) {
    lcn::AdaptiveOptions opts;
    opts.breakpoints = f.quadrature_breakpoints();
    const auto [lo, hi] = f.support();
    return lcn::adaptive_integrate(g, lo, hi, opts).value;
}

double riemann_quantity(const lcn::DensityHandle& f, const lcn::Integrand& g) {
    const auto [lo, hi] = f.support();
    return lcn::riemann_oracle(g, lo, hi, 400000);
}

void criterion5() {
    Criterion c(5, "oracle agreement");
    using lcn::NormOrder;

    std::vector<lcn::DensityHandle> densities = lcn::catalog_densities();
    // Laplace is the one catalog family whose log-density is already piecewise
    // linear on all of R, so it doubles as the closed-form-vs-exact-segment
    // bridge; generated PLLs extend the exact-segment column.
    densities.push_back(lcn::DensityHandle::pll(
        lcn::PiecewiseLogLinearDensity({0.0}, {std::log(0.5)}, 1.0, -1.0), true));
    lcn::GeneratorConfig cfg;
    cfg.seed = 5150;
    for (lcn::DensityHandle& f : lcn::generate_batch(cfg, 4)) densities.push_back(std::move(f));

    auto agree = [&](const char* what, std::vector<double> vals) {
        double lo = kInf, hi = -kInf;
        for (double v : vals) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double rel = (hi - lo) / std::max(1e-300, std::fabs(hi));
        c.check(rel <= 1e-6, fmt((std::string(what) + " spread %.3e").c_str(), rel));
        return rel;
    };

    double worst = 0.0;
    for (const lcn::DensityHandle& f : densities) {
        lcn::DensityFunctionals fns(f);
        const double mu = lcn::mean(f).value;

        for (double p : {1.5, 2.0, 3.0}) {
            auto g = [&f, p](double x) {
                const double l = f.log_pdf(x);
                return std::isinf(l) ? 0.0 : std::exp(p * l);
            };
            const double lib = std::pow(fns.lp_norm(NormOrder::finite(p)), p);
            worst = std::max(worst, agree("lp", {lib, adaptive_quantity(f, g),
                                                 riemann_quantity(f, g)}));
        }
        for (double alpha : {1.0, 2.0, 3.0}) {
            auto g = [&f, mu, alpha](double x) {
                const double l = f.log_pdf(x);
                return std::isinf(l) ? 0.0
                                     : std::pow(std::fabs(x - mu), alpha) * std::exp(l);
            };
            const double lib = std::pow(fns.sigma_alpha(alpha), alpha);
            worst = std::max(worst, agree("sigma", {lib, adaptive_quantity(f, g),
                                                    riemann_quantity(f, g)}));
        }
        auto g_ent = [&f](double x) {
            const double l = f.log_pdf(x);
            return std::isinf(l) ? 0.0 : -l * std::exp(l);
        };
        worst = std::max(worst, agree("entropy", {fns.diff_entropy(),
                                                  adaptive_quantity(f, g_ent),
                                                  riemann_quantity(f, g_ent)}));
    }

    // Closed form vs exact segments on the same density: laplace both ways.
    lcn::DensityFunctionals closed(
        lcn::DensityHandle::analytic(lcn::AnalyticDensity::laplace(0.0, 1.0)));
    lcn::DensityFunctionals segments(densities[densities.size() - 5]);
    for (double p : {1.5, 2.0, 3.0})
        worst = std::max(worst, agree("laplace-as-pll lp",
                                      {closed.lp_norm(NormOrder::finite(p)),
                                       segments.lp_norm(NormOrder::finite(p))}));
    worst = std::max(worst, agree("laplace-as-pll sigma",
                                  {closed.sigma_alpha(2.0), segments.sigma_alpha(2.0)}));
    worst = std::max(worst,
                     agree("laplace-as-pll h", {closed.diff_entropy(), segments.diff_entropy()}));

    c.finish(fmt("worst pairwise spread %.2e over %g densities x {lp, sigma, h}", worst,
                 double(densities.size())));
}

// ---------------------------------------------------------------------------
// 6. Invariance: scale for Theorem 1, affine for Theorem 2, Rényi ordering
//    and the p → 1 limit.

void criterion6() {
    Criterion c(6, "invariance");
    using lcn::NormOrder;

    const std::vector<lcn::DensityHandle> bases = {
        lcn::DensityHandle::analytic(lcn::AnalyticDensity::gaussian(1.0, 2.0)),
        lcn::DensityHandle::analytic(lcn::AnalyticDensity::exponential(1.3)),
        lcn::DensityHandle::analytic(lcn::AnalyticDensity::gamma(3.0, 2.0)),
    };
    const std::vector<std::pair<NormOrder, NormOrder>> pairs = {
        {NormOrder::finite(2.0), NormOrder::finite(1.0)},
        {NormOrder::infinity(), NormOrder::finite(2.0)},
        {NormOrder::finite(8.0), NormOrder::finite(1.5)},
    };
    for (const lcn::DensityHandle& f : bases) {
        lcn::DensityFunctionals fns(f);
        for (const auto& [p, q] : pairs) {
            for (double alpha : {1.0, 2.0}) {
                const double t0 = lcn::check_theorem1(fns, p, q, alpha).tightness;
                for (double scale : {0.1, 10.0}) {
                    lcn::DensityFunctionals scaled(f.affine_image(scale, 0.0));
                    const double t1 = lcn::check_theorem1(scaled, p, q, alpha).tightness;
                    c.check(std::fabs(t1 - t0) <= 1e-8 * std::fabs(t0),
                            fmt("theorem1 tightness %.12f -> %.12f under scale %g", t0, t1,
                                scale));
                }
            }
        }
    }

    // Theorem 2 over 20 seeded invertible transforms of two base densities.
    const Eigen::Vector2d mu(0.3, -0.7);
    Eigen::Matrix2d cov;
    cov << 2.0, 0.6, 0.6, 1.0;
    std::vector<lcn::MultivariateDensity> nd_bases;
    nd_bases.push_back(lcn::MultivariateDensity::gaussian_nd(mu, cov));
    nd_bases.push_back(lcn::MultivariateDensity::product(
        {lcn::DensityHandle::analytic(lcn::AnalyticDensity::gamma(3.0, 2.0)),
         lcn::DensityHandle::analytic(lcn::AnalyticDensity::logistic(0.0, 1.0))}));
    lcn::SplitMix rng(424243);
    int transforms_checked = 0;
    while (transforms_checked < 20) {
        Eigen::Matrix2d a;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) a(i, j) = rng.uniform(-1.5, 1.5);
        if (std::fabs(a.determinant()) < 0.1) continue;
        Eigen::Vector2d t(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        for (const lcn::MultivariateDensity& base : nd_bases) {
            const lcn::MultivariateDensity mapped = base.transformed(a, t);
            for (const auto& [p, q] : pairs) {
                const double t0 = lcn::check_theorem2(base, p, q).tightness;
                const double t1 = lcn::check_theorem2(mapped, p, q).tightness;
                c.check(std::fabs(t1 - t0) <= 1e-8 * std::fabs(t0),
                        fmt("theorem2 tightness %.12f -> %.12f", t0, t1));
            }
        }
        ++transforms_checked;
    }

    // Rényi ladder: non-increasing in p, and h_{1+eps} extrapolates to h.
    double worst_extrap = 0.0;
    for (const lcn::DensityHandle& f : lcn::catalog_densities()) {
        lcn::DensityFunctionals fns(f);
        const std::vector<NormOrder> ladder = {
            NormOrder::finite(1.0001), NormOrder::finite(1.5), NormOrder::finite(2.0),
            NormOrder::finite(3.0),    NormOrder::finite(8.0), NormOrder::infinity()};
        double prev = kInf;
        for (NormOrder p : ladder) {
            const double hp = fns.renyi_entropy(p);
            c.check(hp <= prev + 1e-10, fmt("renyi increased: %.12f -> %.12f", prev, hp));
            prev = hp;
        }
        const double eps = 1e-3;
        const double extrap = 2.0 * fns.renyi_entropy(NormOrder::finite(1.0 + eps / 2.0)) -
                              fns.renyi_entropy(NormOrder::finite(1.0 + eps));
        const double err = std::fabs(extrap - fns.diff_entropy());
        worst_extrap = std::max(worst_extrap, err);
        c.check(err <= 1e-6, fmt("renyi extrapolation error %.3e", err));
    }
    c.finish(fmt("scale/affine tightness drift < 1e-8, renyi limit error %.2e", worst_extrap));
}

// ---------------------------------------------------------------------------
// 7. Multivariate sweep + Monte Carlo validation.

void criterion7() {
    Criterion c(7, "multivariate");
    const lcn::SweepSummary s =
        lcn::run_nd_sweep(lcn::default_nd_densities(3), lcn::default_grid(),
                          lcn::all_nd_claims(), nullptr);
    c.check(s.violations == 0, fmt("%g violations", double(s.violations)));
    c.check(s.nonconvergences == 0, fmt("%g non-convergences", double(s.nonconvergences)));

    const Eigen::Vector2d mu(0.3, -0.7);
    Eigen::Matrix2d cov;
    cov << 2.0, 0.6, 0.6, 1.0;
    const lcn::MultivariateDensity g2 = lcn::MultivariateDensity::gaussian_nd(mu, cov);
    const lcn::MultivariateDensity prod = lcn::MultivariateDensity::product(
        {lcn::DensityHandle::analytic(lcn::AnalyticDensity::exponential(1.0)),
         lcn::DensityHandle::analytic(lcn::AnalyticDensity::laplace(0.0, 1.0))});

    const lcn::McNormCheck mc_g =
        lcn::mc_validate_norm(g2, lcn::NormOrder::finite(2.0), 1000000, 2026);
    c.check(mc_g.contains_exact,
            fmt("gaussian CI [%.8e, %.8e] misses exact %.8e", mc_g.ci_low, mc_g.ci_high,
                mc_g.exact));
    const lcn::McNormCheck mc_p =
        lcn::mc_validate_norm(prod, lcn::NormOrder::finite(2.0), 1000000, 2027);
    c.check(mc_p.contains_exact,
            fmt("product CI [%.8e, %.8e] misses exact %.8e", mc_p.ci_low, mc_p.ci_high,
                mc_p.exact));
    c.check(c.seconds() < 120.0, fmt("runtime %.1fs exceeds 2 min", c.seconds()));
    c.finish(fmt("%.0f nd verdicts, 0 violations; both 99%% CIs contain the exact norm",
                 double(s.records)));
}

// ---------------------------------------------------------------------------
// 8. Extremal search: near-equality recovered, no false counterexample.

void criterion8() {
    Criterion c(8, "extremal search");
    double lemma4_ratio = 0.0, coro2_dev = kInf;
    try {
        lcn::SearchProblem p4;
        p4.claim_id = lcn::ClaimId::lemma4;
        p4.family = lcn::SearchFamily::pll3;
        p4.restarts = 4;
        p4.budget_per_restart = 800;
        const lcn::SearchResult r4 = lcn::maximize_tightness(p4, 5);
        lemma4_ratio = r4.best_ratio;
        c.check(r4.best_ratio >= 0.999, fmt("lemma4 best ratio %.9f", r4.best_ratio));
        c.check(r4.best_ratio <= 1.0 + 1e-6, fmt("lemma4 ratio %.12f above 1", r4.best_ratio));

        lcn::SearchProblem pc;
        pc.claim_id = lcn::ClaimId::corollary2_upper;
        pc.family = lcn::SearchFamily::gaussian;
        pc.restarts = 2;
        pc.budget_per_restart = 200;
        const lcn::SearchResult rc = lcn::maximize_tightness(pc, 3);
        coro2_dev = std::fabs(rc.best_ratio - 1.0);
        c.check(coro2_dev <= 1e-8, fmt("corollary2 ratio off 1 by %.3e", coro2_dev));
        c.check(rc.best_ratio <= 1.0 + 1e-6, fmt("corollary2 ratio %.12f above 1", rc.best_ratio));
    } catch (const lcn::CounterexampleError& e) {
        c.check(false, std::string("counterexample reported: ") + e.what());
    }
    c.finish(fmt("lemma4/pll3 ratio %.6f, corollary2/gaussian |ratio-1| = %.1e", lemma4_ratio,
                 coro2_dev));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures != 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
