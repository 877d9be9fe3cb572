#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "lcn/density.hpp"
#include "lcn/density_io.hpp"
#include "lcn/errors.hpp"
#include "lcn/generator.hpp"

using doctest::Approx;
using nlohmann::json;

TEST_SUITE("density_io") {

TEST_CASE("catalog specs round-trip through JSON") {
    const std::vector<json> specs = {
        {{"family", "gaussian"}, {"params", {{"mu", -0.5}, {"sigma", 2.25}}}},
        {{"family", "exponential"}, {"params", {{"rate", 0.8}}}},
        {{"family", "exponential"},
         {"params", {{"rate", 2.0}, {"shift", 1.0}, {"orientation", -1}}}},
        {{"family", "laplace"}, {"params", {{"location", 3.0}, {"scale", 0.3}}}},
        {{"family", "uniform"}, {"params", {{"a", -2.0}, {"b", -1.0}}}},
        {{"family", "logistic"}, {"params", {{"location", 0.0}, {"scale", 1.4}}}},
        {{"family", "gamma"}, {"params", {{"shape", 5.0}, {"rate", 2.0}}}},
    };
    for (const auto& spec : specs) {
        CAPTURE(spec.dump());
        lcn::LoadedDensity ld = lcn::density_from_json(spec);
        CHECK(ld.log_norm_constant == 0.0);
        json back = lcn::density_to_json(ld.density);
        lcn::LoadedDensity ld2 = lcn::density_from_json(back);
        CHECK(ld.density.family_name() == ld2.density.family_name());
        CHECK(ld.density.params_digest() == ld2.density.params_digest());
        for (double x : {-1.7, 0.0, 0.9, 4.2}) {
            CHECK(ld.density.log_pdf(x) == ld2.density.log_pdf(x));
        }
    }
}

TEST_CASE("PLL specs round-trip and normalize") {
    json spec = {{"pll",
                  {{"knots", {-1.0, 0.0, 2.0}},
                   {"log_values", {3.0, 3.5, 2.0}},  // deliberately unnormalized
                   {"left_slope", 2.0},
                   {"right_slope", -0.75},
                   {"symmetric", false}}}};
    lcn::LoadedDensity ld = lcn::density_from_json(spec);
    CHECK(ld.density.is_pll());
    CHECK(ld.log_norm_constant != 0.0);
    CHECK(ld.density.pll().mass() == Approx(1.0).epsilon(1e-13));
    // Emitted log_values are the normalized ones.
    json back = lcn::density_to_json(ld.density);
    double v0 = back.at("pll").at("log_values")[0].get<double>();
    CHECK(v0 == Approx(3.0 + ld.log_norm_constant).epsilon(1e-13));
    lcn::LoadedDensity ld2 = lcn::density_from_json(back);
    CHECK(ld2.log_norm_constant == Approx(0.0).scale(1.0).epsilon(1e-12));
    for (double x : {-2.0, -0.5, 1.0, 5.0}) {
        CHECK(ld.density.log_pdf(x) == Approx(ld2.density.log_pdf(x)).epsilon(1e-14));
    }

    // Generated densities survive a round trip bit-for-bit on the knot grid.
    lcn::GeneratorConfig cfg;
    cfg.seed = 5;
    lcn::DensityHandle g = lcn::generate(cfg, 3);
    lcn::LoadedDensity g2 = lcn::density_from_json(lcn::density_to_json(g));
    CHECK(g2.density.is_pll());
    CHECK(g2.density.symmetric() == g.symmetric());
    for (double x : g.pll().knots()) {
        CHECK(g2.density.log_pdf(x) == Approx(g.log_pdf(x)).epsilon(1e-13));
    }
}

TEST_CASE("malformed specs are rejected with useful types") {
    CHECK_THROWS_AS(lcn::density_from_json(json{{"family", "cauchy"},
                                                {"params", {{"scale", 1.0}}}}),
                    lcn::UsageError);
    CHECK_THROWS_AS(lcn::density_from_json(json{{"family", "gaussian"},
                                                {"params", {{"mu", 0.0}}}}),
                    lcn::UsageError);
    CHECK_THROWS_AS(lcn::density_from_json(json{{"params", {{"mu", 0.0}}}}), lcn::UsageError);
    // Parameter values outside the family domain surface as domain errors.
    CHECK_THROWS_AS(lcn::density_from_json(
                        json{{"family", "gaussian"}, {"params", {{"mu", 0.0}, {"sigma", -1.0}}}}),
                    lcn::DomainError);
    CHECK_THROWS_AS(lcn::load_density_file("/nonexistent/density.json"), lcn::UsageError);
}

}  // TEST_SUITE
