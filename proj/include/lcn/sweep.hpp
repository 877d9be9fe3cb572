#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "lcn/density.hpp"
#include "lcn/multivariate.hpp"
#include "lcn/norm_order.hpp"
#include "lcn/verdict.hpp"

namespace lcn {

// Grid shared by the 1-D and multivariate campaigns. Norm orders are used
// for p and q both (two-order claims run on ordered pairs p ≤ q); Eq. (4)
// windows are quantile pairs, resolved per density so they scale with it.
struct SweepGrid {
    std::vector<NormOrder> orders;
    std::vector<double> alphas;
    std::vector<std::pair<double, double>> windows;
};

SweepGrid default_grid();

std::vector<ClaimId> all_1d_claims();
std::vector<ClaimId> all_nd_claims();

// 6 catalog families × 3 parameterizations (one exponential arrives as a
// flipped-and-shifted affine image, exercising the orientation bookkeeping).
std::vector<DensityHandle> catalog_densities();

// Deterministic multivariate fixture set: correlated gaussians plus
// transformed products of catalog factors, n ∈ {2, 3}. Transforms are
// rotation·diag(exp(u))·rotation with |u| ≤ 1, so the condition number never
// exceeds e² and the determinant stays away from 0.
std::vector<MultivariateDensity> default_nd_densities(std::uint64_t seed);

using RecordSink = std::function<void(const VerdictRecord&)>;

struct SweepSummary {
    std::size_t records = 0;
    std::size_t violations = 0;
    std::size_t nonconvergences = 0;  // claims skipped after integrator gave up
    double worst_relative_margin = 0.0;  // most negative margin/max(|lhs|,|rhs|) seen
};

// Every requested claim for one density over the grid; symmetric-only claims
// are skipped for densities that do not declare symmetry.
std::vector<VerdictRecord> sweep_density(const DensityHandle& f, const SweepGrid& grid,
                                         const std::vector<ClaimId>& claims);

SweepSummary run_1d_sweep(const std::vector<DensityHandle>& densities, const SweepGrid& grid,
                          const std::vector<ClaimId>& claims, const RecordSink& sink);

SweepSummary run_nd_sweep(const std::vector<MultivariateDensity>& densities,
                          const SweepGrid& grid, const std::vector<ClaimId>& claims,
                          const RecordSink& sink);

}  // namespace lcn
