#include "lcn/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "lcn/errors.hpp"
#include "lcn/functionals.hpp"
#include "lcn/generator.hpp"
#include "lcn/inequality_1d.hpp"
#include "lcn/rng.hpp"

namespace lcn {

namespace {

bool wants(const std::vector<ClaimId>& claims, ClaimId id) {
    return std::find(claims.begin(), claims.end(), id) != claims.end();
}

Eigen::MatrixXd random_well_conditioned(SplitMix& rng, int n) {
    auto random_orthogonal = [&]() -> Eigen::MatrixXd {
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
        return Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ() *
               Eigen::MatrixXd::Identity(n, n);
    };
    Eigen::MatrixXd q1 = random_orthogonal();
    Eigen::MatrixXd q2 = random_orthogonal();
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d[i] = std::exp(rng.uniform(-1.0, 1.0));
    return q1 * d.asDiagonal() * q2;
}

}  // namespace

SweepGrid default_grid() {
    SweepGrid g;
    for (double v : {1.0, 1.5, 2.0, 3.0, 8.0, 64.0}) g.orders.push_back(NormOrder::finite(v));
    g.orders.push_back(NormOrder::infinity());
    g.alphas = {1.0, 1.5, 2.0, 3.0, 4.0};
    g.windows = {{0.05, 0.95}, {0.25, 0.75}, {0.01, 0.5}, {0.5, 0.99}, {0.1, 0.6}};
    return g;
}

std::vector<ClaimId> all_1d_claims() {
    return {ClaimId::theorem1,         ClaimId::theorem1_alpha2, ClaimId::corollary1_lower,
            ClaimId::corollary1_upper, ClaimId::corollary2_lower, ClaimId::corollary2_upper,
            ClaimId::proposition1,     ClaimId::lemma1,          ClaimId::lemma3,
            ClaimId::lemma4,           ClaimId::lemma5,          ClaimId::lemma5_alpha2,
            ClaimId::eq26_symmetric,   ClaimId::eq4_finite_measure};
}

std::vector<ClaimId> all_nd_claims() {
    return {ClaimId::theorem2, ClaimId::lemma2, ClaimId::lemma4_nd, ClaimId::lemma6};
}

std::vector<DensityHandle> catalog_densities() {
    using A = AnalyticDensity;
    std::vector<DensityHandle> out;
    out.push_back(DensityHandle::analytic(A::gaussian(0.0, 1.0)));
    out.push_back(DensityHandle::analytic(A::gaussian(-1.5, 0.4)));
    out.push_back(DensityHandle::analytic(A::gaussian(2.0, 3.0)));
    out.push_back(DensityHandle::analytic(A::exponential(1.0)));
    out.push_back(DensityHandle::analytic(A::exponential(0.25)));
    out.push_back(DensityHandle::analytic(A::exponential(7.0)).affine_image(-1.0, 2.0));
    out.push_back(DensityHandle::analytic(A::laplace(0.0, 1.0)));
    out.push_back(DensityHandle::analytic(A::laplace(1.0, 0.5)));
    out.push_back(DensityHandle::analytic(A::laplace(-2.0, 3.0)));
    out.push_back(DensityHandle::analytic(A::uniform(0.0, 1.0)));
    out.push_back(DensityHandle::analytic(A::uniform(-1.0, 1.0)));
    out.push_back(DensityHandle::analytic(A::uniform(3.0, 3.25)));
    out.push_back(DensityHandle::analytic(A::logistic(0.0, 1.0)));
    out.push_back(DensityHandle::analytic(A::logistic(-0.5, 0.2)));
    out.push_back(DensityHandle::analytic(A::logistic(5.0, 2.0)));
    out.push_back(DensityHandle::analytic(A::gamma(1.5, 1.0)));
    out.push_back(DensityHandle::analytic(A::gamma(3.0, 0.5)));
    out.push_back(DensityHandle::analytic(A::gamma(8.0, 2.0)));
    return out;
}

std::vector<MultivariateDensity> default_nd_densities(std::uint64_t seed) {
    using A = AnalyticDensity;
    std::vector<MultivariateDensity> out;

    Eigen::Matrix2d s2;
    s2 << 1.0, 0.6, 0.6, 1.0;
    out.push_back(MultivariateDensity::gaussian_nd(Eigen::Vector2d::Zero(), s2));
    out.push_back(MultivariateDensity::gaussian_nd(
        Eigen::Vector2d(1.0, -2.0), Eigen::Vector2d(4.0, 0.25).asDiagonal()));
    Eigen::Matrix3d s3;
    s3 << 2.0, 0.5, 0.3, 0.5, 1.0, -0.2, 0.3, -0.2, 1.5;
    out.push_back(MultivariateDensity::gaussian_nd(Eigen::Vector3d(0.5, 0.0, -1.0), s3));

    std::vector<std::vector<DensityHandle>> factor_sets;
    factor_sets.push_back({DensityHandle::analytic(A::exponential(1.0)),
                           DensityHandle::analytic(A::laplace(0.0, 1.0))});
    factor_sets.push_back({DensityHandle::analytic(A::gamma(2.0, 1.0)),
                           DensityHandle::analytic(A::exponential(0.5))});
    factor_sets.push_back({DensityHandle::analytic(A::gaussian(0.0, 1.0)),
                           DensityHandle::analytic(A::uniform(0.0, 1.0)),
                           DensityHandle::analytic(A::logistic(0.0, 1.0))});
    factor_sets.push_back({DensityHandle::analytic(A::uniform(-1.0, 1.0)),
                           DensityHandle::analytic(A::gaussian(1.0, 0.5)),
                           DensityHandle::analytic(A::laplace(0.0, 2.0))});
    GeneratorConfig cfg;
    cfg.seed = seed;
    factor_sets.push_back({generate(cfg, 0), generate(cfg, 1)});

    SplitMix rng(derive_stream_seed(seed, 0x6e64u));  // "nd" sub-stream
    for (auto& factors : factor_sets) {
        const int n = static_cast<int>(factors.size());
        MultivariateDensity base = MultivariateDensity::product(std::move(factors));
        out.push_back(base);
        Eigen::VectorXd t(n);
        for (int i = 0; i < n; ++i) t[i] = rng.uniform(-1.0, 1.0);
        out.push_back(base.transformed(random_well_conditioned(rng, n), t));
    }
    return out;
}

std::vector<VerdictRecord> sweep_density(const DensityHandle& f, const SweepGrid& grid,
                                         const std::vector<ClaimId>& claims) {
    DensityFunctionals fns(f);
    const bool symmetric = f.symmetric();
    std::vector<VerdictRecord> out;
    auto push = [&](const InequalityVerdict& v) { out.push_back(to_record(v, f)); };

    for (std::size_t i = 0; i < grid.orders.size(); ++i) {
        const NormOrder p = grid.orders[i];
        for (std::size_t j = i; j < grid.orders.size(); ++j) {
            const NormOrder q = grid.orders[j];
            if (wants(claims, ClaimId::theorem1_alpha2))
                push(check_theorem1(fns, p, q, 2.0, true));
            for (double alpha : grid.alphas) {
                if (wants(claims, ClaimId::theorem1)) push(check_theorem1(fns, p, q, alpha));
                if (wants(claims, ClaimId::corollary1_lower) ||
                    wants(claims, ClaimId::corollary1_upper)) {
                    auto pair = check_corollary1(fns, p, q, alpha);
                    if (wants(claims, ClaimId::corollary1_lower)) push(pair.first);
                    if (wants(claims, ClaimId::corollary1_upper)) push(pair.second);
                }
                if (symmetric && wants(claims, ClaimId::proposition1))
                    push(check_proposition1(fns, p, q, alpha));
            }
        }
    }

    for (const NormOrder p : grid.orders) {
        if (wants(claims, ClaimId::lemma3)) push(check_lemma3(fns, p));
        if (wants(claims, ClaimId::lemma1))
            for (double alpha : grid.alphas) push(check_lemma1(fns, p, alpha));
    }

    for (double alpha : grid.alphas) {
        if (wants(claims, ClaimId::corollary2_lower) ||
            wants(claims, ClaimId::corollary2_upper)) {
            auto pair = check_corollary2(fns, alpha);
            if (wants(claims, ClaimId::corollary2_lower)) push(pair.first);
            if (wants(claims, ClaimId::corollary2_upper)) push(pair.second);
        }
        if (wants(claims, ClaimId::lemma5)) push(check_lemma5(fns, alpha));
        if (symmetric && wants(claims, ClaimId::eq26_symmetric))
            push(check_symmetric_density_bound(fns, alpha));
    }

    if (wants(claims, ClaimId::lemma4)) push(check_lemma4(fns));
    if (wants(claims, ClaimId::lemma5_alpha2)) push(check_lemma5(fns, 2.0, true));

    if (wants(claims, ClaimId::eq4_finite_measure)) {
        for (auto [ua, ub] : grid.windows) {
            const double a = f.quantile(ua), b = f.quantile(ub);
            for (std::size_t i = 0; i < grid.orders.size(); ++i)
                for (std::size_t j = i; j < grid.orders.size(); ++j)
                    push(check_finite_measure_inequality(f, a, b, grid.orders[i],
                                                         grid.orders[j]));
        }
    }
    return out;
}

namespace {

void absorb(SweepSummary& s, const VerdictRecord& r, const RecordSink& sink) {
    ++s.records;
    if (!r.holds) ++s.violations;
    const double scale = std::max({std::fabs(r.lhs), std::fabs(r.rhs), 1e-300});
    s.worst_relative_margin = std::min(s.worst_relative_margin, r.margin / scale);
    sink(r);
}

}  // namespace

SweepSummary run_1d_sweep(const std::vector<DensityHandle>& densities, const SweepGrid& grid,
                          const std::vector<ClaimId>& claims, const RecordSink& sink) {
    SweepSummary s;
    s.worst_relative_margin = std::numeric_limits<double>::infinity();
    for (const DensityHandle& f : densities) {
        try {
            for (const VerdictRecord& r : sweep_density(f, grid, claims)) absorb(s, r, sink);
        } catch (const NonConvergenceError&) {
            ++s.nonconvergences;
        }
    }
    return s;
}

SweepSummary run_nd_sweep(const std::vector<MultivariateDensity>& densities,
                          const SweepGrid& grid, const std::vector<ClaimId>& claims,
                          const RecordSink& sink) {
    SweepSummary s;
    s.worst_relative_margin = std::numeric_limits<double>::infinity();
    for (const MultivariateDensity& f : densities) {
        try {
            for (std::size_t i = 0; i < grid.orders.size(); ++i) {
                if (wants(claims, ClaimId::lemma2))
                    absorb(s, to_record(check_lemma2(f, grid.orders[i]), f), sink);
                if (wants(claims, ClaimId::theorem2))
                    for (std::size_t j = i; j < grid.orders.size(); ++j)
                        absorb(s, to_record(check_theorem2(f, grid.orders[i], grid.orders[j]), f),
                               sink);
            }
            if (wants(claims, ClaimId::lemma4_nd))
                absorb(s, to_record(check_lemma4_nd(f), f), sink);
            if (wants(claims, ClaimId::lemma6))
                absorb(s, to_record(check_lemma6(f), f), sink);
        } catch (const NonConvergenceError&) {
            ++s.nonconvergences;
        }
    }
    return s;
}

}  // namespace lcn
