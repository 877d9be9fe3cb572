#pragma once

#include <string>

#include "json.hpp"
#include "lcn/density.hpp"

namespace lcn {

struct LoadedDensity {
    DensityHandle density;
    // Offset added to the input's log f to reach unit mass (0 for catalog
    // members, which are normalized by definition).
    double log_norm_constant = 0.0;
};

// Density spec format:
//   {"family": "gaussian", "params": {"mu": 0, "sigma": 1}}
//   {"family": "exponential", "params": {"rate": 1, "shift": 0, "orientation": 1}}
//   {"family": "laplace"|"logistic", "params": {"location": .., "scale": ..}}
//   {"family": "uniform", "params": {"a": .., "b": ..}}
//   {"family": "gamma", "params": {"shape": .., "rate": .., "shift": .., "orientation": ..}}
//   {"pll": {"knots": [...], "log_values": [...], "left_slope": s,
//            "right_slope": s, "symmetric": false}}
// shift/orientation/symmetric are optional. PLL log_values may be unnormalized.
LoadedDensity density_from_json(const nlohmann::json& spec);
LoadedDensity load_density_file(const std::string& path);

// Inverse of density_from_json (always emits normalized log_values).
nlohmann::json density_to_json(const DensityHandle& f);

}  // namespace lcn
