#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcn/density.hpp"
#include "lcn/norm_order.hpp"
#include "lcn/verdict.hpp"

namespace lcn {

// A tightness ratio above 1 + tol is not noise: it certifies a violated
// inequality, and the witness density rides along for reproduction.
class CounterexampleError : public std::runtime_error {
public:
    CounterexampleError(const std::string& what, DensityHandle witness,
                        InequalityVerdict verdict)
        : std::runtime_error(what), witness_(std::move(witness)), verdict_(verdict) {}

    const DensityHandle& witness() const { return witness_; }
    const InequalityVerdict& verdict() const { return verdict_; }

private:
    DensityHandle witness_;
    InequalityVerdict verdict_;
};

// Parametric spaces the optimizer walks. The PLL families are searched in
// unconstrained coordinates (tail slopes as ±exp, interior slopes as
// normalized cumulative positive weights between them, knot gaps as exp), so
// every raw vector maps to a valid log-concave density and the simplex never
// needs constraint handling. Catalog families expose their natural scale
// parameters through log coordinates the same way.
enum class SearchFamily { pll3, pll5, gaussian, exponential, laplace, uniform, logistic, gamma };

std::string search_family_name(SearchFamily family);
SearchFamily search_family_from_name(const std::string& name);

struct SearchProblem {
    ClaimId claim_id = ClaimId::lemma4;
    SearchFamily family = SearchFamily::pll3;
    NormOrder p = NormOrder::finite(2.0);
    NormOrder q = NormOrder::infinity();
    double alpha = 2.0;
    int restarts = 8;
    int budget_per_restart = 2000;
    double tol = 1e-6;  // ratios in (1, 1+tol] count as noise; above aborts
};

struct SearchResult {
    std::vector<double> best_params;  // raw coordinates of the champion
    DensityHandle best_density;
    InequalityVerdict best_verdict;
    double best_ratio = 0.0;
    std::vector<double> trace;        // best-so-far ratio after each evaluation
    std::size_t evaluations = 0;
    std::size_t rejected_candidates = 0;  // rounding-edge constructor rejections
    std::size_t noisy_ratios = 0;         // ratios that landed in (1, 1+tol]
    bool budget_exhausted = false;        // some restart never collapsed its simplex
};

// Nelder–Mead ascent on the claim's tightness ratio with seeded random
// restarts; deterministic for a fixed (problem, seed) including the trace.
SearchResult maximize_tightness(const SearchProblem& problem, std::uint64_t seed);

// Tightness of one claim for a fixed density over a (p, q, α) grid.
std::vector<VerdictRecord> tightness_landscape(ClaimId claim_id, const DensityHandle& f,
                                               const std::vector<NormOrder>& ps,
                                               const std::vector<NormOrder>& qs,
                                               const std::vector<double>& alphas);

}  // namespace lcn
