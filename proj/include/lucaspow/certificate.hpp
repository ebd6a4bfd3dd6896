#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lucaspow/precision.hpp"
#include "lucaspow/sequences.hpp"

namespace lucaspow {

struct Enclosure {
    std::string approx;  // decimal midpoint
    std::string err;     // decimal radius, rounded up
};

struct Claim {
    std::string description;
    std::string value;
    std::optional<Enclosure> enclosure;
    std::string paper_value;  // the paper's figure for this claim, when it has one
};

struct StageRecord {
    std::string name;
    std::string status;  // "certified", "partial" or "failed"
    std::vector<Claim> claims;
};

struct CertEnvironment {
    long precision_start = kDefaultPrec;
    long precision_ceiling = kPrecCeiling;
    long error_precision = kErrPrec;
    int retry_budget = 10;
    std::string artifact_version;
    std::string gmp_runtime;
    std::string mpfr_runtime;
    std::string generated_at;  // wall clock; excluded from determinism checks
};

// Ordered record of the pipeline run.  Every numeric claim carries either an
// exact integer or a certified enclosure; `conclusion` restates the stage-1
// search output, which the later stages prove exhaustive.
struct ProofCertificate {
    int cert_version = 1;
    std::string sequence;  // "lucas" or "fibonacci"
    unsigned long a_param = 1;
    std::string prime;     // decimal
    unsigned long search_limit = 0;
    std::vector<StageRecord> stages;
    std::vector<SolutionTriple> conclusion;
    std::vector<std::string> notes;
    CertEnvironment environment;
    bool valid = false;
    std::string failure;  // empty when valid
};

nlohmann::json certificate_to_json(const ProofCertificate& cert);
ProofCertificate certificate_from_json(const nlohmann::json& j);

// Claim builders.
Claim claim_text(std::string description, std::string value, std::string paper = "");
Claim claim_integer(std::string description, const mpz_class& value, std::string paper = "");
Claim claim_ball(std::string description, const PrecReal& value, std::string paper = "");

}  // namespace lucaspow
