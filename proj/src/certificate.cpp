#include "lucaspow/certificate.hpp"

namespace lucaspow {

using nlohmann::json;

Claim claim_text(std::string description, std::string value, std::string paper) {
    Claim c;
    c.description = std::move(description);
    c.value = std::move(value);
    c.paper_value = std::move(paper);
    return c;
}

Claim claim_integer(std::string description, const mpz_class& value, std::string paper) {
    return claim_text(std::move(description), value.get_str(), std::move(paper));
}

Claim claim_ball(std::string description, const PrecReal& value, std::string paper) {
    Claim c;
    c.description = std::move(description);
    c.value = value.approx_decimal(24);
    c.enclosure = Enclosure{value.approx_decimal(40), value.err_decimal()};
    c.paper_value = std::move(paper);
    return c;
}

json certificate_to_json(const ProofCertificate& cert) {
    json stages = json::array();
    for (const auto& st : cert.stages) {
        json claims = json::array();
        for (const auto& c : st.claims) {
            json jc{{"description", c.description}, {"value", c.value}};
            if (c.enclosure)
                jc["enclosure"] = json{{"approx", c.enclosure->approx}, {"err", c.enclosure->err}};
            if (!c.paper_value.empty()) jc["paper_value"] = c.paper_value;
            claims.push_back(std::move(jc));
        }
        stages.push_back(json{{"name", st.name}, {"status", st.status}, {"claims", claims}});
    }
    json conclusion = json::array();
    for (const auto& t : cert.conclusion)
        conclusion.push_back(json{{"n", std::to_string(t.n)},
                                  {"m", std::to_string(t.m)},
                                  {"a", std::to_string(t.a)}});
    json env{{"precision_start", cert.environment.precision_start},
             {"precision_ceiling", cert.environment.precision_ceiling},
             {"error_precision", cert.environment.error_precision},
             {"retry_budget", cert.environment.retry_budget},
             {"artifact_version", cert.environment.artifact_version},
             {"gmp_version", cert.environment.gmp_runtime},
             {"mpfr_version", cert.environment.mpfr_runtime},
             {"generated_at", cert.environment.generated_at}};
    return json{{"cert_version", cert.cert_version},
                {"equation", json{{"sequence", cert.sequence},
                                  {"a_param", cert.a_param},
                                  {"prime", cert.prime}}},
                {"search_limit", cert.search_limit},
                {"stages", stages},
                {"conclusion", conclusion},
                {"notes", cert.notes},
                {"environment", env},
                {"valid", cert.valid},
                {"failure", cert.failure}};
}

ProofCertificate certificate_from_json(const json& j) {
    ProofCertificate cert;
    cert.cert_version = j.at("cert_version").get<int>();
    cert.sequence = j.at("equation").at("sequence").get<std::string>();
    cert.a_param = j.at("equation").at("a_param").get<unsigned long>();
    cert.prime = j.at("equation").at("prime").get<std::string>();
    cert.search_limit = j.at("search_limit").get<unsigned long>();
    for (const auto& st : j.at("stages")) {
        StageRecord rec;
        rec.name = st.at("name").get<std::string>();
        rec.status = st.at("status").get<std::string>();
        for (const auto& jc : st.at("claims")) {
            Claim c;
            c.description = jc.at("description").get<std::string>();
            c.value = jc.at("value").get<std::string>();
            if (jc.contains("enclosure"))
                c.enclosure = Enclosure{jc.at("enclosure").at("approx").get<std::string>(),
                                        jc.at("enclosure").at("err").get<std::string>()};
            if (jc.contains("paper_value")) c.paper_value = jc.at("paper_value").get<std::string>();
            rec.claims.push_back(std::move(c));
        }
        cert.stages.push_back(std::move(rec));
    }
    for (const auto& t : j.at("conclusion"))
        cert.conclusion.push_back(SolutionTriple{
            std::stoul(t.at("n").get<std::string>()), std::stoul(t.at("m").get<std::string>()),
            std::stoul(t.at("a").get<std::string>())});
    for (const auto& n : j.at("notes")) cert.notes.push_back(n.get<std::string>());
    const auto& env = j.at("environment");
    cert.environment.precision_start = env.at("precision_start").get<long>();
    cert.environment.precision_ceiling = env.at("precision_ceiling").get<long>();
    cert.environment.error_precision = env.at("error_precision").get<long>();
    cert.environment.retry_budget = env.at("retry_budget").get<int>();
    cert.environment.artifact_version = env.at("artifact_version").get<std::string>();
    cert.environment.gmp_runtime = env.at("gmp_version").get<std::string>();
    cert.environment.mpfr_runtime = env.at("mpfr_version").get<std::string>();
    cert.environment.generated_at = env.at("generated_at").get<std::string>();
    cert.valid = j.at("valid").get<bool>();
    cert.failure = j.at("failure").get<std::string>();
    return cert;
}

}  // namespace lucaspow
