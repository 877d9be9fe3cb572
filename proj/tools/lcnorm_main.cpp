// lcnorm: evaluate functionals of log-concave densities and certify the
// L^p-norm / entropy inequalities they satisfy.
//
// Subcommands: constants | eval | check | search | scan.
// Exit codes: 0 all claims hold, 1 usage/parse error, 2 at least one
// violation, 3 numerical non-convergence, 4 counterexample found by search.
//
// stdout carries only the data product (verdict table or JSON report);
// progress and summaries go to stderr, so `check --replay` can be compared
// byte-for-byte against the run that wrote the manifest.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lcn/density.hpp"
#include "lcn/density_io.hpp"
#include "lcn/errors.hpp"
#include "lcn/functionals.hpp"
#include "lcn/generator.hpp"
#include "lcn/inequality_1d.hpp"
#include "lcn/multivariate.hpp"
#include "lcn/norm_order.hpp"
#include "lcn/search.hpp"
#include "lcn/special_functions.hpp"
#include "lcn/sweep.hpp"
#include "lcn/verdict.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr const char* kToolName = "lcnorm";
constexpr const char* kToolVersion = "1.0.0";

std::string timestamp_utc() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---------------------------------------------------------------------------
// token parsing

lcn::NormOrder parse_order_token(std::string token) {
    if (token == "∞") token = "inf";  // accept the literal ∞ as well
    return lcn::NormOrder::parse(token);
}

std::vector<lcn::NormOrder> parse_order_tokens(const std::vector<std::string>& tokens) {
    std::vector<lcn::NormOrder> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(parse_order_token(t));
    return out;
}

bool is_nd_claim(lcn::ClaimId id) {
    return id == lcn::ClaimId::theorem2 || id == lcn::ClaimId::lemma2 ||
           id == lcn::ClaimId::lemma4_nd || id == lcn::ClaimId::lemma6;
}

// Claim names accept '-' as a separator on the command line ("corollary2-upper");
// "all", "all-1d" and "all-nd" expand to the built-in claim lists. --tightened
// swaps theorem1/lemma5 for their α = 2 forms.
std::vector<lcn::ClaimId> resolve_claims(const std::vector<std::string>& tokens, bool tightened) {
    std::vector<lcn::ClaimId> out;
    auto push = [&](lcn::ClaimId id) {
        if (tightened && id == lcn::ClaimId::theorem1) id = lcn::ClaimId::theorem1_alpha2;
        if (tightened && id == lcn::ClaimId::lemma5) id = lcn::ClaimId::lemma5_alpha2;
        if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    };
    for (std::string t : tokens) {
        if (t == "all" || t == "all-1d")
            for (lcn::ClaimId id : lcn::all_1d_claims()) push(id);
        if (t == "all" || t == "all-nd")
            for (lcn::ClaimId id : lcn::all_nd_claims()) push(id);
        if (t == "all" || t == "all-1d" || t == "all-nd") continue;
        std::replace(t.begin(), t.end(), '-', '_');
        push(lcn::claim_from_name(t));
    }
    return out;
}

lcn::ClaimId resolve_single_claim(std::string token) {
    std::replace(token.begin(), token.end(), '-', '_');
    return lcn::claim_from_name(token);
}

// A density argument is either a file path or an inline form like
// "gaussian(0,1)"; both resolve to the JSON spec format so everything
// downstream shares one loader.
json inline_density_spec(const std::string& text) {
    auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')')
        throw lcn::UsageError("inline density must look like family(a,b): got '" + text + "'");
    std::string name = text.substr(0, open);
    std::string inner = text.substr(open + 1, text.size() - open - 2);
    std::vector<double> a;
    std::size_t pos = 0;
    while (pos <= inner.size() && !inner.empty()) {
        std::size_t comma = inner.find(',', pos);
        std::string tok = inner.substr(pos, comma == std::string::npos ? comma : comma - pos);
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw lcn::UsageError("bad number '" + tok + "' in '" + text + "'");
        }
        if (used != tok.size())
            throw lcn::UsageError("bad number '" + tok + "' in '" + text + "'");
        a.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (a.size() < lo || a.size() > hi)
            throw lcn::UsageError("wrong number of parameters in '" + text + "'");
    };
    json params;
    if (name == "gaussian") {
        need(2, 2);
        params = {{"mu", a[0]}, {"sigma", a[1]}};
    } else if (name == "exponential") {
        need(1, 3);
        params["rate"] = a[0];
        if (a.size() > 1) params["shift"] = a[1];
        if (a.size() > 2) params["orientation"] = a[2];
    } else if (name == "laplace" || name == "logistic") {
        need(2, 2);
        params = {{"location", a[0]}, {"scale", a[1]}};
    } else if (name == "uniform") {
        need(2, 2);
        params = {{"a", a[0]}, {"b", a[1]}};
    } else if (name == "gamma") {
        need(2, 4);
        params["shape"] = a[0];
        params["rate"] = a[1];
        if (a.size() > 2) params["shift"] = a[2];
        if (a.size() > 3) params["orientation"] = a[3];
    } else {
        throw lcn::UsageError("unknown density family '" + name + "'");
    }
    return json{{"family", name}, {"params", params}};
}

json density_spec_from_arg(const std::string& arg) {
    if (arg.find('(') != std::string::npos) return inline_density_spec(arg);
    std::ifstream in(arg);
    if (!in) throw lcn::UsageError("cannot open density file '" + arg + "'");
    return json::parse(in);  // parse_error carries byte offset
}

// ---------------------------------------------------------------------------
// check

struct CheckCfg {
    json density_spec;  // null unless a density argument was given
    long random_count = 0;
    lcn::GeneratorConfig gen;
    std::vector<std::string> claim_tokens = {"all-1d"};
    bool tightened = false;
    std::vector<std::string> order_tokens = {"1", "1.5", "2", "3", "8", "64", "inf"};
    std::vector<double> alphas = {1.0, 1.5, 2.0, 3.0, 4.0};
    std::vector<std::pair<double, double>> windows = lcn::default_grid().windows;
    std::uint64_t seed = 0;
    bool tol_override = false;
    double tol = 0.0;
    std::string out = "csv";
    std::vector<int> nd_dims = {2, 3};
    std::string nd_family = "all";
};

ordered_json check_manifest(const CheckCfg& cfg) {
    ordered_json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["timestamp"] = timestamp_utc();
    m["command"] = "check";
    m["seed"] = cfg.seed;
    if (cfg.tol_override) m["tol"] = cfg.tol;
    m["out"] = cfg.out;
    m["claims"] = cfg.claim_tokens;
    m["tightened"] = cfg.tightened;
    m["orders"] = cfg.order_tokens;
    m["alphas"] = cfg.alphas;
    ordered_json wins = ordered_json::array();
    for (const auto& w : cfg.windows) wins.push_back({w.first, w.second});
    m["windows"] = wins;
    ordered_json src;
    if (!cfg.density_spec.is_null()) {
        src["kind"] = "density";
        src["density"] = cfg.density_spec;
    } else if (cfg.random_count > 0) {
        src["kind"] = "random";
        src["count"] = cfg.random_count;
        src["generator"] = {{"min_knots", cfg.gen.min_knots},
                            {"max_knots", cfg.gen.max_knots},
                            {"span_lo", cfg.gen.span_lo},
                            {"span_hi", cfg.gen.span_hi},
                            {"slope_scale", cfg.gen.slope_scale},
                            {"symmetric_fraction", cfg.gen.symmetric_fraction}};
    } else {
        src["kind"] = "catalog";
    }
    m["source"] = src;
    m["nd"] = {{"dims", cfg.nd_dims}, {"family", cfg.nd_family}};
    return m;
}

CheckCfg check_cfg_from_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lcn::UsageError("cannot open manifest '" + path + "'");
    json m = json::parse(in);
    if (m.value("command", "") != "check")
        throw lcn::UsageError("manifest in '" + path + "' is not a check manifest");
    CheckCfg cfg;
    cfg.seed = m.at("seed").get<std::uint64_t>();
    if (m.contains("tol")) {
        cfg.tol_override = true;
        cfg.tol = m["tol"].get<double>();
    }
    cfg.out = m.at("out").get<std::string>();
    cfg.claim_tokens = m.at("claims").get<std::vector<std::string>>();
    cfg.tightened = m.at("tightened").get<bool>();
    cfg.order_tokens = m.at("orders").get<std::vector<std::string>>();
    cfg.alphas = m.at("alphas").get<std::vector<double>>();
    cfg.windows.clear();
    for (const auto& w : m.at("windows")) cfg.windows.emplace_back(w.at(0), w.at(1));
    const json& src = m.at("source");
    std::string kind = src.at("kind").get<std::string>();
    if (kind == "density") {
        cfg.density_spec = src.at("density");
    } else if (kind == "random") {
        cfg.random_count = src.at("count").get<long>();
        const json& g = src.at("generator");
        cfg.gen.min_knots = g.at("min_knots").get<int>();
        cfg.gen.max_knots = g.at("max_knots").get<int>();
        cfg.gen.span_lo = g.at("span_lo").get<double>();
        cfg.gen.span_hi = g.at("span_hi").get<double>();
        cfg.gen.slope_scale = g.at("slope_scale").get<double>();
        cfg.gen.symmetric_fraction = g.at("symmetric_fraction").get<double>();
    }
    cfg.nd_dims = m.at("nd").at("dims").get<std::vector<int>>();
    cfg.nd_family = m.at("nd").at("family").get<std::string>();
    return cfg;
}

int run_check(const CheckCfg& cfg, std::ostream& os) {
    lcn::SweepGrid grid;
    grid.orders = parse_order_tokens(cfg.order_tokens);
    grid.alphas = cfg.alphas;
    grid.windows = cfg.windows;
    std::vector<lcn::ClaimId> claims = resolve_claims(cfg.claim_tokens, cfg.tightened);
    std::vector<lcn::ClaimId> claims_1d, claims_nd;
    for (lcn::ClaimId id : claims) (is_nd_claim(id) ? claims_nd : claims_1d).push_back(id);
    const bool mv = !claims_nd.empty();  // one schema for the whole table

    std::size_t written = 0, violations = 0, nonconvergences = 0;
    double worst = 0.0;
    if (cfg.out == "csv") os << lcn::verdict_csv_header(mv) << '\n';
    lcn::RecordSink sink = [&](const lcn::VerdictRecord& r0) {
        lcn::VerdictRecord r = r0;
        if (cfg.tol_override)
            r.holds = r.margin >= -cfg.tol * std::max(std::abs(r.lhs), std::abs(r.rhs));
        if (!r.holds) ++violations;
        worst = std::min(worst, r.margin / std::max({std::abs(r.lhs), std::abs(r.rhs), 1e-300}));
        os << (cfg.out == "csv" ? lcn::verdict_csv_row(r, mv) : lcn::verdict_jsonl_row(r, mv))
           << '\n';
        ++written;
    };

    if (!claims_1d.empty()) {
        std::vector<lcn::DensityHandle> densities;
        if (!cfg.density_spec.is_null()) {
            densities.push_back(lcn::density_from_json(cfg.density_spec).density);
        } else if (cfg.random_count > 0) {
            lcn::GeneratorConfig g = cfg.gen;
            g.seed = cfg.seed;
            densities = lcn::generate_batch(g, static_cast<std::size_t>(cfg.random_count));
        } else {
            densities = lcn::catalog_densities();
        }
        lcn::SweepSummary s = lcn::run_1d_sweep(densities, grid, claims_1d, sink);
        nonconvergences += s.nonconvergences;
    }
    if (!claims_nd.empty()) {
        if (!cfg.density_spec.is_null())
            throw lcn::UsageError(
                "multivariate claims run on the built-in fixture set; drop the density argument");
        std::vector<lcn::MultivariateDensity> densities;
        for (const lcn::MultivariateDensity& d : lcn::default_nd_densities(cfg.seed)) {
            if (std::find(cfg.nd_dims.begin(), cfg.nd_dims.end(), d.dim()) == cfg.nd_dims.end())
                continue;
            if (cfg.nd_family == "gaussian-nd" && !d.is_gaussian()) continue;
            if (cfg.nd_family == "products" && d.is_gaussian()) continue;
            densities.push_back(d);
        }
        lcn::SweepSummary s = lcn::run_nd_sweep(densities, grid, claims_nd, sink);
        nonconvergences += s.nonconvergences;
    }
    std::fprintf(stderr,
                 "checked %zu claim instances: %zu violations, %zu non-convergences, "
                 "worst relative margin %.3e\n",
                 written, violations, nonconvergences, worst);
    if (violations > 0) return 2;
    if (nonconvergences > 0) return 3;
    return 0;
}

// ---------------------------------------------------------------------------
// eval

const char* kind_name(lcn::FunctionalKind k) {
    switch (k) {
        case lcn::FunctionalKind::lp_norm: return "lp_norm";
        case lcn::FunctionalKind::sigma_alpha: return "sigma_alpha";
        case lcn::FunctionalKind::diff_entropy: return "diff_entropy";
        case lcn::FunctionalKind::renyi_entropy: return "renyi_entropy";
        case lcn::FunctionalKind::mean: return "mean";
    }
    return "?";
}

const char* method_name(lcn::FunctionalMethod m) {
    switch (m) {
        case lcn::FunctionalMethod::closed_form: return "closed_form";
        case lcn::FunctionalMethod::exact_segment: return "exact_segment";
        case lcn::FunctionalMethod::adaptive: return "adaptive";
    }
    return "?";
}

ordered_json functional_json(const lcn::FunctionalValue& v) {
    ordered_json o;
    o["kind"] = kind_name(v.kind);
    if (!std::isnan(v.order)) {
        if (std::isinf(v.order))
            o["order"] = "inf";
        else
            o["order"] = v.order;
    }
    o["value"] = v.value;
    o["error_estimate"] = v.error_estimate;
    o["method"] = method_name(v.method);
    return o;
}

struct EvalCfg {
    std::string density_arg;
    std::vector<std::string> lp_tokens, renyi_tokens;
    std::vector<double> sigma_alphas;
    bool want_mean = false, want_entropy = false, want_supnorm = false;
};

int run_eval(const EvalCfg& cfg, std::ostream& os) {
    json spec = density_spec_from_arg(cfg.density_arg);
    lcn::LoadedDensity ld = lcn::density_from_json(spec);

    ordered_json requested = ordered_json::array();
    ordered_json results = ordered_json::array();
    auto record = [&](const char* what, const ordered_json& req_order,
                      const lcn::FunctionalValue& v) {
        ordered_json req;
        req["kind"] = what;
        if (!req_order.is_null()) req["order"] = req_order;
        requested.push_back(req);
        results.push_back(functional_json(v));
    };
    for (const auto& t : cfg.lp_tokens)
        record("lp_norm", t, lcn::lp_norm(ld.density, parse_order_token(t)));
    if (cfg.want_supnorm)
        record("lp_norm", "inf", lcn::lp_norm(ld.density, lcn::NormOrder::infinity()));
    for (double a : cfg.sigma_alphas) record("sigma_alpha", a, lcn::sigma_alpha(ld.density, a));
    for (const auto& t : cfg.renyi_tokens)
        record("renyi_entropy", t, lcn::renyi_entropy(ld.density, parse_order_token(t)));
    if (cfg.want_entropy) record("diff_entropy", nullptr, lcn::diff_entropy(ld.density));
    if (cfg.want_mean) record("mean", nullptr, lcn::mean(ld.density));
    if (requested.empty())
        throw lcn::UsageError("nothing to evaluate: pass --lp/--sigma/--renyi/--mean/--entropy/--supnorm");

    ordered_json manifest;
    manifest["tool"] = kToolName;
    manifest["version"] = kToolVersion;
    manifest["timestamp"] = timestamp_utc();
    manifest["command"] = "eval";
    manifest["density"] = spec;
    manifest["functionals"] = requested;

    ordered_json report;
    report["manifest"] = manifest;
    report["density"] = lcn::density_to_json(ld.density);
    report["log_norm_constant"] = ld.log_norm_constant;
    report["results"] = results;
    os << report.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// constants

int run_constants(const std::vector<double>& alphas, const std::vector<int>& ns) {
    std::printf("%-8s %-18s %-18s\n", "alpha", "C_alpha", "D_alpha");
    for (double a : alphas)
        std::printf("%-8g %-18.10f %-18.10f\n", a, lcn::c_alpha(a), lcn::d_alpha(a));
    std::printf("\n%-8s %-18s %-18s\n", "n", "C(n)", "D(n)");
    for (int n : ns) std::printf("%-8d %-18.10f %-18.10f\n", n, lcn::c_n(n), lcn::d_n(n));
    return 0;
}

// ---------------------------------------------------------------------------
// search

struct SearchCfg {
    std::string claim_token;
    std::string family = "pll3";
    std::string p_token = "2", q_token = "inf";
    double alpha = 2.0;
    int restarts = 8;
    int budget = 2000;
    double tol = 1e-6;
    std::uint64_t seed = 0;
    std::string witness_path = "witness.json";
    std::string out = "csv";
};

ordered_json search_manifest(const SearchCfg& cfg) {
    ordered_json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["timestamp"] = timestamp_utc();
    m["command"] = "search";
    m["claim"] = cfg.claim_token;
    m["family"] = cfg.family;
    m["p"] = cfg.p_token;
    m["q"] = cfg.q_token;
    m["alpha"] = cfg.alpha;
    m["restarts"] = cfg.restarts;
    m["budget_per_restart"] = cfg.budget;
    m["tol"] = cfg.tol;
    m["seed"] = cfg.seed;
    return m;
}

ordered_json verdict_json(const lcn::InequalityVerdict& v) {
    ordered_json o;
    o["claim"] = lcn::claim_name(v.claim_id);
    o["lhs"] = v.lhs;
    o["rhs"] = v.rhs;
    o["margin"] = v.margin;
    o["tightness"] = v.tightness;
    o["holds"] = v.holds;
    return o;
}

void write_witness(const std::string& path, const ordered_json& doc) {
    std::ofstream out(path);
    if (!out) throw lcn::UsageError("cannot write witness file '" + path + "'");
    out << doc.dump(2) << '\n';
}

void print_one_row(const lcn::VerdictRecord& r, const std::string& out, std::ostream& os) {
    if (out == "csv") {
        os << lcn::verdict_csv_header(false) << '\n' << lcn::verdict_csv_row(r, false) << '\n';
    } else {
        os << lcn::verdict_jsonl_row(r, false) << '\n';
    }
}

int run_search(const SearchCfg& cfg, std::ostream& os) {
    lcn::ClaimId claim = resolve_single_claim(cfg.claim_token);
    lcn::NormOrder p = parse_order_token(cfg.p_token);
    lcn::NormOrder q = parse_order_token(cfg.q_token);
    ordered_json manifest = search_manifest(cfg);

    // "catalog" is not an optimizer family: it just sweeps the fixed catalog
    // at the requested (p, q, α) and reports the champion member.
    if (cfg.family == "catalog") {
        std::optional<lcn::DensityHandle> best;
        lcn::InequalityVerdict best_v{};
        std::size_t evaluations = 0, skipped = 0;
        for (const lcn::DensityHandle& d : lcn::catalog_densities()) {
            lcn::DensityFunctionals fns(d);
            lcn::InequalityVerdict v{};
            try {
                v = lcn::run_claim(fns, claim, p, q, cfg.alpha);
            } catch (const lcn::UsageError&) {
                continue;  // symmetric-only claim on an asymmetric member
            } catch (const lcn::NonConvergenceError&) {
                ++skipped;
                continue;
            }
            ++evaluations;
            if (v.tightness > 1.0 + cfg.tol) {
                ordered_json doc;
                doc["manifest"] = manifest;
                doc["found"] = "counterexample";
                doc["ratio"] = v.tightness;
                doc["density"] = lcn::density_to_json(d);
                doc["verdict"] = verdict_json(v);
                write_witness(cfg.witness_path, doc);
                std::fprintf(stderr, "COUNTEREXAMPLE: %s ratio %.12g (witness in %s)\n",
                             lcn::claim_name(claim).c_str(), v.tightness,
                             cfg.witness_path.c_str());
                return 4;
            }
            if (!best || v.tightness > best_v.tightness) {
                best = d;
                best_v = v;
            }
        }
        if (!best)
            throw lcn::NonConvergenceError("no catalog member admits this claim",
                                           std::numeric_limits<double>::quiet_NaN(),
                                           std::numeric_limits<double>::quiet_NaN());
        ordered_json doc;
        doc["manifest"] = manifest;
        doc["found"] = "champion";
        doc["ratio"] = best_v.tightness;
        doc["evaluations"] = evaluations;
        doc["skipped"] = skipped;
        doc["density"] = lcn::density_to_json(*best);
        doc["verdict"] = verdict_json(best_v);
        write_witness(cfg.witness_path, doc);
        print_one_row(lcn::to_record(best_v, *best), cfg.out, os);
        std::fprintf(stderr, "best ratio %.12g over %zu catalog members (family %s)\n",
                     best_v.tightness, evaluations, best->family_name().c_str());
        return 0;
    }

    lcn::SearchProblem problem{claim,
                               lcn::search_family_from_name(cfg.family),
                               p,
                               q,
                               cfg.alpha,
                               cfg.restarts,
                               cfg.budget,
                               cfg.tol};
    try {
        lcn::SearchResult res = lcn::maximize_tightness(problem, cfg.seed);
        ordered_json doc;
        doc["manifest"] = manifest;
        doc["found"] = "champion";
        doc["ratio"] = res.best_ratio;
        doc["evaluations"] = res.evaluations;
        doc["rejected_candidates"] = res.rejected_candidates;
        doc["noisy_ratios"] = res.noisy_ratios;
        doc["budget_exhausted"] = res.budget_exhausted;
        doc["params"] = res.best_params;
        doc["density"] = lcn::density_to_json(res.best_density);
        doc["verdict"] = verdict_json(res.best_verdict);
        write_witness(cfg.witness_path, doc);
        print_one_row(lcn::to_record(res.best_verdict, res.best_density), cfg.out, os);
        std::fprintf(stderr,
                     "best ratio %.12g after %zu evaluations (%zu rejected, %zu noisy)%s\n",
                     res.best_ratio, res.evaluations, res.rejected_candidates, res.noisy_ratios,
                     res.budget_exhausted ? "; budget exhausted before simplex collapse" : "");
        if (res.noisy_ratios > 0)
            std::fprintf(stderr, "warning: %zu ratios in (1, 1+tol] treated as rounding noise\n",
                         res.noisy_ratios);
        return 0;
    } catch (const lcn::CounterexampleError& e) {
        ordered_json doc;
        doc["manifest"] = manifest;
        doc["found"] = "counterexample";
        doc["ratio"] = e.verdict().tightness;
        doc["density"] = lcn::density_to_json(e.witness());
        doc["verdict"] = verdict_json(e.verdict());
        write_witness(cfg.witness_path, doc);
        std::fprintf(stderr, "COUNTEREXAMPLE: %s (witness in %s)\n", e.what(),
                     cfg.witness_path.c_str());
        return 4;
    }
}

// ---------------------------------------------------------------------------
// scan

struct ScanCfg {
    std::string claim_token;
    std::string density_arg;
    std::vector<std::string> order_tokens = {"1", "1.5", "2", "3", "8", "64", "inf"};
    std::vector<double> alphas = {1.0, 2.0, 3.0};
    std::string out = "csv";
};

int run_scan(const ScanCfg& cfg, std::ostream& os) {
    lcn::ClaimId claim = resolve_single_claim(cfg.claim_token);
    lcn::LoadedDensity ld = lcn::density_from_json(density_spec_from_arg(cfg.density_arg));
    std::vector<lcn::NormOrder> orders = parse_order_tokens(cfg.order_tokens);
    std::vector<lcn::VerdictRecord> rows =
        lcn::tightness_landscape(claim, ld.density, orders, orders, cfg.alphas);
    if (cfg.out == "csv") os << lcn::verdict_csv_header(false) << '\n';
    const lcn::VerdictRecord* peak = nullptr;
    for (const auto& r : rows) {
        os << (cfg.out == "csv" ? lcn::verdict_csv_row(r, false) : lcn::verdict_jsonl_row(r, false))
           << '\n';
        if (!peak || r.tightness > peak->tightness) peak = &r;
    }
    if (peak)
        std::fprintf(stderr, "scanned %zu cells; max ratio %.12g at p=%g q=%g alpha=%g\n",
                     rows.size(), peak->tightness, peak->p, peak->q, peak->alpha);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"L^p norms, moment norms and entropy inequalities of log-concave densities"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    // constants
    std::vector<double> const_alphas = {1.0, 1.5, 2.0, 3.0, 4.0};
    std::vector<int> const_ns = {2, 3};
    CLI::App* c_const = app.add_subcommand("constants", "Print C_alpha, D_alpha, C(n), D(n)");
    c_const->add_option("--alpha", const_alphas, "moment orders (alpha > 0)")
        ->delimiter(',');
    c_const->add_option("--n", const_ns, "dimensions (n >= 2 for D(n))")->delimiter(',');

    // eval
    EvalCfg ev;
    CLI::App* c_eval =
        app.add_subcommand("eval", "Evaluate functionals of one density; JSON report on stdout");
    c_eval->add_option("density", ev.density_arg, "density spec file or inline form like gaussian(0,1)")
        ->required();
    c_eval->add_option("--lp", ev.lp_tokens, "L^p norm orders (numbers or 'inf')")->delimiter(',');
    c_eval->add_option("--sigma", ev.sigma_alphas, "moment-norm orders alpha")->delimiter(',');
    c_eval->add_option("--renyi", ev.renyi_tokens, "Renyi entropy orders (p > 1 or 'inf')")
        ->delimiter(',');
    c_eval->add_flag("--mean", ev.want_mean, "mean");
    c_eval->add_flag("--entropy", ev.want_entropy, "differential entropy");
    c_eval->add_flag("--supnorm", ev.want_supnorm, "sup-norm (same as --lp inf)");

    // check
    CheckCfg ck;
    std::string ck_density_arg, ck_manifest_path, ck_replay_path;
    CLI::App* c_check = app.add_subcommand(
        "check", "Run inequality claims over a density, random batch, or the catalog");
    c_check->add_option("density", ck_density_arg,
                        "density spec file or inline form (default: catalog)");
    c_check->add_option("--random", ck.random_count, "check N generated densities instead");
    c_check->add_option("--seed", ck.seed, "seed for generated densities and nd fixtures");
    c_check->add_option("--claims", ck.claim_tokens,
                        "claim names, or all / all-1d / all-nd")
        ->delimiter(',');
    c_check->add_flag("--tightened", ck.tightened,
                      "use the alpha=2 tightened forms of theorem1 and lemma5");
    c_check->add_option("--orders", ck.order_tokens, "norm orders for p and q")->delimiter(',');
    c_check->add_option("--alpha", ck.alphas, "moment orders alpha")->delimiter(',');
    double ck_tol = 0.0;
    CLI::Option* ck_tol_opt =
        c_check->add_option("--tol", ck_tol, "override the per-claim relative tolerance");
    c_check->add_option("--out", ck.out, "table format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    c_check->add_option("--manifest", ck_manifest_path, "write the run manifest to this file");
    c_check->add_option("--replay", ck_replay_path,
                        "re-run a written manifest (other input flags are ignored)");
    c_check->add_option("--n", ck.nd_dims, "dimensions for multivariate claims")->delimiter(',');
    c_check->add_option("--family", ck.nd_family, "multivariate fixture filter")
        ->check(CLI::IsMember({"all", "gaussian-nd", "products"}))
        ->capture_default_str();
    c_check->add_option("--min-knots", ck.gen.min_knots, "generator: fewest interior knots");
    c_check->add_option("--max-knots", ck.gen.max_knots, "generator: most interior knots");
    c_check->add_option("--span-lo", ck.gen.span_lo, "generator: left end of the knot span");
    c_check->add_option("--span-hi", ck.gen.span_hi, "generator: right end of the knot span");
    c_check->add_option("--slope-scale", ck.gen.slope_scale, "generator: slope variate scale");
    c_check->add_option("--symmetric-fraction", ck.gen.symmetric_fraction,
                        "generator: fraction of symmetrized outputs");

    // search
    SearchCfg se;
    CLI::App* c_search = app.add_subcommand(
        "search", "Maximize the tightness ratio of one claim over a density family");
    c_search->add_option("claim", se.claim_token, "claim to stress")->required();
    c_search
        ->add_option("--family", se.family,
                     "pll3 | pll5 | gaussian | exponential | laplace | uniform | logistic | "
                     "gamma | catalog")
        ->capture_default_str();
    c_search->add_option("--p", se.p_token, "norm order p")->capture_default_str();
    c_search->add_option("--q", se.q_token, "norm order q")->capture_default_str();
    c_search->add_option("--alpha", se.alpha, "moment order alpha")->capture_default_str();
    c_search->add_option("--restarts", se.restarts, "random restarts")->capture_default_str();
    c_search->add_option("--budget", se.budget, "evaluations per restart")->capture_default_str();
    c_search->add_option("--tol", se.tol, "noise band above ratio 1")->capture_default_str();
    c_search->add_option("--seed", se.seed, "restart seed");
    c_search->add_option("--witness", se.witness_path, "witness report path")
        ->capture_default_str();
    c_search->add_option("--out", se.out, "champion row format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // scan
    ScanCfg sc;
    CLI::App* c_scan = app.add_subcommand(
        "scan", "Tightness of one claim for a fixed density over a (p, q, alpha) grid");
    c_scan->add_option("claim", sc.claim_token, "claim to scan")->required();
    c_scan->add_option("density", sc.density_arg, "density spec file or inline form")->required();
    c_scan->add_option("--orders", sc.order_tokens, "norm orders for p and q")->delimiter(',');
    c_scan->add_option("--alpha", sc.alphas, "moment orders alpha")->delimiter(',');
    c_scan->add_option("--out", sc.out, "table format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*c_const) return run_constants(const_alphas, const_ns);
        if (*c_eval) return run_eval(ev, std::cout);
        if (*c_check) {
            if (!ck_replay_path.empty()) {
                ck = check_cfg_from_manifest(ck_replay_path);
            } else {
                if (!ck_density_arg.empty() && ck.random_count > 0)
                    throw lcn::UsageError("give a density or --random, not both");
                if (!ck_density_arg.empty()) ck.density_spec = density_spec_from_arg(ck_density_arg);
                if (ck_tol_opt->count() > 0) {
                    ck.tol_override = true;
                    ck.tol = ck_tol;
                }
            }
            if (!ck_manifest_path.empty()) {
                std::ofstream mout(ck_manifest_path);
                if (!mout)
                    throw lcn::UsageError("cannot write manifest '" + ck_manifest_path + "'");
                mout << check_manifest(ck).dump(2) << '\n';
            }
            return run_check(ck, std::cout);
        }
        if (*c_search) return run_search(se, std::cout);
        if (*c_scan) return run_scan(sc, std::cout);
    } catch (const lcn::NonConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what() << '\n';
        return 3;
    } catch (const lcn::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const lcn::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
