#include "lcn/verdict.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "lcn/errors.hpp"

namespace lcn {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct ClaimNameEntry {
    ClaimId id;
    const char* name;
};

constexpr ClaimNameEntry kClaimNames[] = {
    {ClaimId::theorem1, "theorem1"},
    {ClaimId::theorem1_alpha2, "theorem1_alpha2"},
    {ClaimId::corollary1_lower, "corollary1_lower"},
    {ClaimId::corollary1_upper, "corollary1_upper"},
    {ClaimId::corollary2_lower, "corollary2_lower"},
    {ClaimId::corollary2_upper, "corollary2_upper"},
    {ClaimId::proposition1, "proposition1"},
    {ClaimId::lemma1, "lemma1"},
    {ClaimId::lemma3, "lemma3"},
    {ClaimId::lemma4, "lemma4"},
    {ClaimId::lemma5, "lemma5"},
    {ClaimId::lemma5_alpha2, "lemma5_alpha2"},
    {ClaimId::eq26_symmetric, "eq26_symmetric"},
    {ClaimId::eq4_finite_measure, "eq4_finite_measure"},
    {ClaimId::theorem2, "theorem2"},
    {ClaimId::lemma2, "lemma2"},
    {ClaimId::lemma4_nd, "lemma4_nd"},
    {ClaimId::lemma6, "lemma6"},
};

// CSV cell for a double: shortest round-trip form; NaN prints empty, ±inf
// prints as inf (matching the CLI's "inf" norm-order token).
std::string num_cell(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

}  // namespace

std::string claim_name(ClaimId id) {
    for (const auto& e : kClaimNames)
        if (e.id == id) return e.name;
    throw UsageError("unnamed claim id");
}

ClaimId claim_from_name(const std::string& name) {
    for (const auto& e : kClaimNames)
        if (name == e.name) return e.id;
    throw UsageError("unknown claim '" + name + "'");
}

InequalityVerdict verdict_from_logs(ClaimId id, double log_lhs, double log_rhs, double tol) {
    InequalityVerdict v;
    v.claim_id = id;
    v.lhs = std::exp(log_lhs);
    v.rhs = std::exp(log_rhs);
    v.margin = v.rhs - v.lhs;
    v.tightness = std::exp(log_lhs - log_rhs);
    v.holds = v.margin >= -tol * std::max(std::fabs(v.lhs), std::fabs(v.rhs));
    v.tol = tol;
    v.p = v.q = v.alpha = kNan;
    return v;
}

InequalityVerdict verdict_from_values(ClaimId id, double lhs, double rhs, double tol) {
    InequalityVerdict v;
    v.claim_id = id;
    v.lhs = lhs;
    v.rhs = rhs;
    v.margin = rhs - lhs;
    v.tightness = lhs / rhs;
    v.holds = v.margin >= -tol * std::max(std::fabs(lhs), std::fabs(rhs));
    v.tol = tol;
    v.p = v.q = v.alpha = kNan;
    return v;
}

VerdictRecord to_record(const InequalityVerdict& v, const DensityHandle& f) {
    VerdictRecord r;
    r.claim_id = v.claim_id;
    r.family = f.family_name();
    r.params_digest = f.params_digest();
    r.p = v.p;
    r.q = v.q;
    r.alpha = v.alpha;
    r.lhs = v.lhs;
    r.rhs = v.rhs;
    r.margin = v.margin;
    r.tightness = v.tightness;
    r.holds = v.holds;
    return r;
}

std::string verdict_csv_header(bool multivariate) {
    std::string h = "claim_id,family,params_digest,p,q,alpha,lhs,rhs,margin,tightness,holds";
    if (multivariate) h += ",n,sigma_digest";
    return h;
}

std::string verdict_csv_row(const VerdictRecord& r, bool multivariate) {
    std::string out = claim_name(r.claim_id);
    out += ',';
    out += r.family;
    out += ',';
    out += r.params_digest;
    for (double v : {r.p, r.q, r.alpha, r.lhs, r.rhs, r.margin, r.tightness}) {
        out += ',';
        out += num_cell(v);
    }
    out += r.holds ? ",true" : ",false";
    if (multivariate) {
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += r.sigma_digest;
    }
    return out;
}

std::string verdict_jsonl_row(const VerdictRecord& r, bool multivariate) {
    nlohmann::ordered_json j;
    j["claim_id"] = claim_name(r.claim_id);
    j["family"] = r.family;
    j["params_digest"] = r.params_digest;
    // inf/NaN are not JSON numbers; reuse the CSV cell forms (null when absent)
    auto put = [&j](const char* key, double v) {
        if (std::isnan(v))
            j[key] = nullptr;
        else if (std::isinf(v))
            j[key] = v > 0 ? "inf" : "-inf";
        else
            j[key] = v;
    };
    put("p", r.p);
    put("q", r.q);
    put("alpha", r.alpha);
    put("lhs", r.lhs);
    put("rhs", r.rhs);
    put("margin", r.margin);
    put("tightness", r.tightness);
    j["holds"] = r.holds;
    if (multivariate) {
        j["n"] = r.n;
        j["sigma_digest"] = r.sigma_digest;
    }
    return j.dump();
}

}  // namespace lcn
