#include "lcn/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lcn/errors.hpp"
#include "lcn/functionals.hpp"
#include "lcn/inequality_1d.hpp"
#include "lcn/rng.hpp"

namespace lcn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

int pll_knot_count(SearchFamily f) {
    if (f == SearchFamily::pll3) return 3;
    if (f == SearchFamily::pll5) return 5;
    return 0;
}

int raw_dim(SearchFamily f) {
    switch (f) {
        case SearchFamily::pll3:
        case SearchFamily::pll5: return 2 * pll_knot_count(f) + 1;
        case SearchFamily::exponential: return 1;
        default: return 2;
    }
}

bool family_symmetric(SearchFamily f) {
    return f == SearchFamily::gaussian || f == SearchFamily::laplace ||
           f == SearchFamily::uniform || f == SearchFamily::logistic;
}

// Clamped so no raw coordinate can push a parameter into overflow; the
// optimum of every shipped problem sits far inside the box.
double bounded_exp(double x) { return std::exp(std::clamp(x, -18.0, 18.0)); }

DensityHandle build_candidate(SearchFamily fam, const std::vector<double>& th) {
    switch (fam) {
        case SearchFamily::gaussian:
            return DensityHandle::analytic(AnalyticDensity::gaussian(th[0], bounded_exp(th[1])));
        case SearchFamily::exponential:
            return DensityHandle::analytic(AnalyticDensity::exponential(bounded_exp(th[0])));
        case SearchFamily::laplace:
            return DensityHandle::analytic(AnalyticDensity::laplace(th[0], bounded_exp(th[1])));
        case SearchFamily::uniform:
            return DensityHandle::analytic(
                AnalyticDensity::uniform(th[0], th[0] + bounded_exp(th[1])));
        case SearchFamily::logistic:
            return DensityHandle::analytic(AnalyticDensity::logistic(th[0], bounded_exp(th[1])));
        case SearchFamily::gamma:
            return DensityHandle::analytic(
                AnalyticDensity::gamma(1.0 + bounded_exp(th[0]), bounded_exp(th[1])));
        case SearchFamily::pll3:
        case SearchFamily::pll5: break;
    }
    const int k = pll_knot_count(fam);
    const double left = bounded_exp(th[0]);
    const double right = -bounded_exp(th[1]);
    double total = 0.0;
    std::vector<double> w(k);
    for (int i = 0; i < k; ++i) total += (w[i] = bounded_exp(th[2 + i]));

    std::vector<double> knots(k), logv(k, 0.0);
    knots[0] = 0.0;
    for (int i = 1; i < k; ++i) knots[i] = knots[i - 1] + bounded_exp(th[2 + k + i - 1]);
    double cum = 0.0;
    for (int j = 1; j < k; ++j) {
        cum += w[j - 1];
        const double slope = left - (left - right) * (cum / total);
        logv[j] = logv[j - 1] + slope * (knots[j] - knots[j - 1]);
    }
    return DensityHandle::pll(
        PiecewiseLogLinearDensity(std::move(knots), std::move(logv), left, right));
}

struct Campaign {
    explicit Campaign(const SearchProblem& pr) : problem(pr) {}

    const SearchProblem& problem;
    double best_ratio = kNegInf;
    std::vector<double> best_params;
    std::vector<double> trace;
    std::size_t evaluations = 0;
    std::size_t rejected = 0;
    std::size_t noisy = 0;

    // Returns −ratio (the simplex minimizes); invalid candidates score +∞.
    double objective(const std::vector<double>& th) {
        ++evaluations;
        double ratio = kNegInf;
        try {
            DensityHandle f = build_candidate(problem.family, th);
            InequalityVerdict v =
                run_claim(f, problem.claim_id, problem.p, problem.q, problem.alpha);
            ratio = v.tightness;
            if (ratio > 1.0 + problem.tol)
                throw CounterexampleError("tightness " + std::to_string(ratio) + " for " +
                                              claim_name(problem.claim_id) +
                                              " exceeds 1 + tol: counterexample",
                                          f, v);
            if (ratio > 1.0) ++noisy;
        } catch (const CounterexampleError&) {
            throw;
        } catch (const DomainError&) {
            ++rejected;
        } catch (const NonConvergenceError&) {
            ++rejected;
        }
        if (std::isfinite(ratio) && ratio > best_ratio) {
            best_ratio = ratio;
            best_params = th;
        }
        trace.push_back(best_ratio);
        return -ratio;
    }
};

// Textbook Nelder–Mead on a fixed evaluation budget. Returns true when the
// simplex collapsed (value spread below 1e-13) before the budget ran out.
bool nelder_mead(Campaign& c, SplitMix& rng, int dim, int budget) {
    const std::size_t start = c.evaluations;
    auto left = [&] { return budget - static_cast<int>(c.evaluations - start); };

    std::vector<std::vector<double>> x(dim + 1, std::vector<double>(dim));
    std::vector<double> fx(dim + 1);
    for (int j = 0; j <= dim; ++j) {
        for (int i = 0; i < dim; ++i) x[j][i] = rng.uniform(-2.0, 2.0);
        if (j > 0) x[j] = x[0], x[j][j - 1] += 0.7;
        fx[j] = c.objective(x[j]);
        if (left() <= 0) return false;
    }

    std::vector<int> ord(dim + 1);
    while (left() > 0) {
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        const int lo = ord[0], hi = ord[dim], nexthi = ord[dim - 1];
        if (fx[hi] - fx[lo] <= 1e-13 * (1.0 + std::fabs(fx[lo]))) return true;

        std::vector<double> centroid(dim, 0.0);
        for (int j = 0; j <= dim; ++j)
            if (j != hi)
                for (int i = 0; i < dim; ++i) centroid[i] += x[j][i] / dim;

        auto blend = [&](double coef) {
            std::vector<double> p(dim);
            for (int i = 0; i < dim; ++i) p[i] = centroid[i] + coef * (x[hi][i] - centroid[i]);
            return p;
        };

        std::vector<double> xr = blend(-1.0);
        const double fr = c.objective(xr);
        if (fr < fx[lo] && left() > 0) {
            std::vector<double> xe = blend(-2.0);
            const double fe = c.objective(xe);
            if (fe < fr) x[hi] = std::move(xe), fx[hi] = fe;
            else x[hi] = std::move(xr), fx[hi] = fr;
        } else if (fr < fx[nexthi]) {
            x[hi] = std::move(xr), fx[hi] = fr;
        } else if (left() > 0) {
            std::vector<double> xc = blend(0.5);
            const double fc = c.objective(xc);
            if (fc < std::min(fr, fx[hi])) {
                x[hi] = std::move(xc), fx[hi] = fc;
            } else {  // shrink toward the best vertex
                for (int j = 0; j <= dim && left() > 0; ++j) {
                    if (j == lo) continue;
                    for (int i = 0; i < dim; ++i) x[j][i] = 0.5 * (x[j][i] + x[lo][i]);
                    fx[j] = c.objective(x[j]);
                }
            }
        }
    }
    return false;
}

}  // namespace

std::string search_family_name(SearchFamily family) {
    switch (family) {
        case SearchFamily::pll3: return "pll3";
        case SearchFamily::pll5: return "pll5";
        case SearchFamily::gaussian: return "gaussian";
        case SearchFamily::exponential: return "exponential";
        case SearchFamily::laplace: return "laplace";
        case SearchFamily::uniform: return "uniform";
        case SearchFamily::logistic: return "logistic";
        case SearchFamily::gamma: return "gamma";
    }
    return "?";
}

SearchFamily search_family_from_name(const std::string& name) {
    for (SearchFamily f : {SearchFamily::pll3, SearchFamily::pll5, SearchFamily::gaussian,
                           SearchFamily::exponential, SearchFamily::laplace,
                           SearchFamily::uniform, SearchFamily::logistic, SearchFamily::gamma})
        if (search_family_name(f) == name) return f;
    throw UsageError("unknown search family: " + name);
}

SearchResult maximize_tightness(const SearchProblem& problem, std::uint64_t seed) {
    if (problem.restarts < 1 || problem.budget_per_restart < 4)
        throw UsageError("search needs at least 1 restart and a few evaluations");
    if ((problem.claim_id == ClaimId::proposition1 ||
         problem.claim_id == ClaimId::eq26_symmetric) &&
        !family_symmetric(problem.family))
        throw UsageError(claim_name(problem.claim_id) +
                         " needs a family that is symmetric by construction");

    const int dim = raw_dim(problem.family);
    Campaign c(problem);
    bool exhausted = false;
    for (int r = 0; r < problem.restarts; ++r) {
        SplitMix rng(derive_stream_seed(seed, static_cast<std::uint64_t>(r)));
        if (!nelder_mead(c, rng, dim, problem.budget_per_restart)) exhausted = true;
    }
    if (!std::isfinite(c.best_ratio))
        throw NonConvergenceError("search found no valid candidate", c.best_ratio, 0.0);

    DensityHandle best = build_candidate(problem.family, c.best_params);
    InequalityVerdict v = run_claim(best, problem.claim_id, problem.p, problem.q, problem.alpha);
    return SearchResult{std::move(c.best_params), std::move(best),     v,
                        c.best_ratio,             std::move(c.trace),  c.evaluations,
                        c.rejected,               c.noisy,             exhausted};
}

std::vector<VerdictRecord> tightness_landscape(ClaimId claim_id, const DensityHandle& f,
                                               const std::vector<NormOrder>& ps,
                                               const std::vector<NormOrder>& qs,
                                               const std::vector<double>& alphas) {
    DensityFunctionals fns(f);
    std::vector<VerdictRecord> rows;
    rows.reserve(ps.size() * qs.size() * alphas.size());
    for (NormOrder p : ps)
        for (NormOrder q : qs)
            for (double alpha : alphas)
                rows.push_back(to_record(run_claim(fns, claim_id, p, q, alpha), f));
    return rows;
}

}  // namespace lcn
