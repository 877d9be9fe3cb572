#include "lcn/generator.hpp"

#include <algorithm>
#include <cmath>

#include "lcn/errors.hpp"
#include "lcn/rng.hpp"

namespace lcn {

namespace {

void validate(const GeneratorConfig& c) {
    if (c.min_knots < 1 || c.max_knots < c.min_knots)
        throw UsageError("generator: knot count range is degenerate");
    if (!(c.span_lo < c.span_hi)) throw UsageError("generator: knot span is degenerate");
    if (!(c.slope_scale > 0.0)) throw UsageError("generator: slope_scale must be positive");
    if (!(c.symmetric_fraction >= 0.0 && c.symmetric_fraction <= 1.0))
        throw UsageError("generator: symmetric_fraction must lie in [0, 1]");
}

double laplace_variate(SplitMix& rng, double scale) {
    const double u = rng.uniform01();
    return scale * (u < 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u)));
}

// Mirror-average log f about the midpoint of its knot range. Offsets are laid
// out as c ± u with the same log value on both sides, so the symmetry is
// exact by construction; offsets closer than 1e-3·span are merged (cutting a
// chord of a concave function keeps it concave, and keeps the derived-slope
// arithmetic far away from the constructor's monotonicity tolerance).
PiecewiseLogLinearDensity symmetrize(const PiecewiseLogLinearDensity& f) {
    const std::vector<double>& kx = f.knots();
    const double c = 0.5 * (kx.front() + kx.back());
    const double span = std::max(kx.back() - kx.front(), 1e-12);

    std::vector<double> offsets{0.0};
    for (double x : kx) offsets.push_back(std::fabs(x - c));
    std::sort(offsets.begin(), offsets.end());
    std::vector<double> u;
    for (double o : offsets)
        if (u.empty() || o - u.back() > 1e-3 * span) u.push_back(o);

    std::vector<double> knots, logv;
    const std::size_t m = u.size();
    knots.resize(2 * m - 1);
    logv.resize(2 * m - 1);
    for (std::size_t i = 0; i < m; ++i) {
        const double v = 0.5 * (f.log_pdf(c + u[i]) + f.log_pdf(c - u[i]));
        knots[m - 1 + i] = c + u[i];
        knots[m - 1 - i] = c - u[i];
        logv[m - 1 + i] = v;
        logv[m - 1 - i] = v;
    }
    const double tail = 0.5 * (f.left_slope() - f.right_slope());
    return PiecewiseLogLinearDensity(std::move(knots), std::move(logv), tail, -tail);
}

}  // namespace

DensityHandle generate(const GeneratorConfig& config, std::uint64_t index) {
    validate(config);
    SplitMix rng(derive_stream_seed(config.seed, index));
    const bool symmetric = rng.uniform01() < config.symmetric_fraction;

    const int k =
        config.min_knots +
        static_cast<int>(rng.next_u64() %
                         static_cast<std::uint64_t>(config.max_knots - config.min_knots + 1));

    // Knots: random start in the left third of the span, then positive gaps.
    const double w = config.span_hi - config.span_lo;
    std::vector<double> knots(k);
    knots[0] = config.span_lo + 0.3 * w * rng.uniform01();
    for (int i = 1; i < k; ++i)
        knots[i] = knots[i - 1] + (0.05 + 0.95 * rng.uniform01()) * (0.7 * w / std::max(k - 1, 1));

    // k+1 slopes (left tail, k−1 interior, right tail): sorted heavy-tailed
    // draws, nudged strictly apart, then shifted so the sequence straddles 0
    // at a random asymmetric point — u near the ends makes one tail steep and
    // the other shallow (near-triangular), u near ½ makes flat-top shapes.
    std::vector<double> s(k + 1);
    for (double& v : s) v = laplace_variate(rng, config.slope_scale);
    std::sort(s.rbegin(), s.rend());
    for (int i = 0; i <= k; ++i) s[i] -= 1e-7 * config.slope_scale * i;
    const double raw = 2.0 * rng.uniform01() - 1.0;
    const double u_split =
        0.02 + 0.96 * 0.5 * (1.0 + std::copysign(std::pow(std::fabs(raw), 0.75), raw));
    const double shift = s[k] + (s[0] - s[k]) * u_split;
    for (double& v : s) v -= shift;

    std::vector<double> logv(k, 0.0);
    for (int i = 1; i < k; ++i) logv[i] = logv[i - 1] + s[i] * (knots[i] - knots[i - 1]);

    PiecewiseLogLinearDensity d(std::move(knots), std::move(logv), s[0], s[k]);
    if (!symmetric) return DensityHandle::pll(std::move(d));
    return DensityHandle::pll(symmetrize(d), true);
}

std::vector<DensityHandle> generate_batch(const GeneratorConfig& config, std::size_t count) {
    std::vector<DensityHandle> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(generate(config, i));
    return out;
}

}  // namespace lcn
