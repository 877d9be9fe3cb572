#pragma once

#include <cstdint>
#include <vector>

#include "lcn/density.hpp"

namespace lcn {

// Deterministic PLL generation: generate(config, index) is a pure function of
// its arguments, so batches are reproducible and embarrassingly parallel.
// symmetric_fraction of the outputs are symmetrized (mirror-averaged log f,
// which keeps concavity) and carry the symmetric flag; the rest are skewed on
// purpose — slope draws are heavy-tailed so the batch mixes near-flat-top
// densities with near-triangular ones instead of clustering in the middle.
struct GeneratorConfig {
    std::uint64_t seed = 0;
    int min_knots = 2;
    int max_knots = 12;
    double span_lo = -5.0;
    double span_hi = 5.0;
    double slope_scale = 1.0;
    double symmetric_fraction = 0.25;
};

DensityHandle generate(const GeneratorConfig& config, std::uint64_t index);
std::vector<DensityHandle> generate_batch(const GeneratorConfig& config, std::size_t count);

}  // namespace lcn
