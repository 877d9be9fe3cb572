#pragma once

#include <string>

#include "lcn/density.hpp"

namespace lcn {

enum class ClaimId {
    theorem1,
    theorem1_alpha2,
    corollary1_lower,
    corollary1_upper,
    corollary2_lower,
    corollary2_upper,
    proposition1,
    lemma1,
    lemma3,
    lemma4,
    lemma5,
    lemma5_alpha2,
    eq26_symmetric,
    eq4_finite_measure,
    // multivariate
    theorem2,
    lemma2,
    lemma4_nd,
    lemma6,
};

std::string claim_name(ClaimId id);
ClaimId claim_from_name(const std::string& name);

// One checked inequality instance, always oriented as lhs ≤ rhs.
struct InequalityVerdict {
    ClaimId claim_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;     // rhs − lhs
    double tightness = 0.0;  // lhs / rhs
    bool holds = false;      // margin ≥ −tol·max(|lhs|, |rhs|)
    double tol = 0.0;
    // α < 1 is outside the stated range of every theorem except Lemma 1;
    // such verdicts are computed anyway and flagged instead of refused.
    bool outside_stated_range = false;
    // Inputs as applicable; NaN when a slot does not apply, +inf for p/q = ∞.
    double p, q, alpha;
};

// Builds a verdict from log-space sides, so that exact-equality cases
// (e.g. Lemma 3 at p = ∞, where both logs are the same double) produce a
// margin of exactly zero instead of rounding noise.
InequalityVerdict verdict_from_logs(ClaimId id, double log_lhs, double log_rhs, double tol);
InequalityVerdict verdict_from_values(ClaimId id, double lhs, double rhs, double tol);

// Flat record for CSV/JSONL output; the multivariate suite appends its
// dimension and covariance digest to the same schema.
struct VerdictRecord {
    ClaimId claim_id;
    std::string family;
    std::string params_digest;
    double p, q, alpha;
    double lhs, rhs, margin, tightness;
    bool holds;
    int n = 1;
    std::string sigma_digest;
};

VerdictRecord to_record(const InequalityVerdict& v, const DensityHandle& f);

// Column order is part of the external contract:
// claim_id,family,params_digest,p,q,alpha,lhs,rhs,margin,tightness,holds[,n,sigma_digest]
std::string verdict_csv_header(bool multivariate);
std::string verdict_csv_row(const VerdictRecord& r, bool multivariate);
std::string verdict_jsonl_row(const VerdictRecord& r, bool multivariate);

}  // namespace lcn
