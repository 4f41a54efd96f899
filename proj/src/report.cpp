#include "dpv/report.hpp"

#include <stdexcept>

namespace dpv {

std::string status_str(Status s) {
    switch (s) {
    case Status::Pass: return "Pass";
    case Status::Fail: return "Fail";
    case Status::Inconclusive: return "Inconclusive";
    }
    return "?";
}

nlohmann::json Witness::to_json() const {
    nlohmann::json in = nlohmann::json::object();
    for (const auto& [k, v] : inputs) in[k] = v;
    return {{"inputs", in}, {"expected", expected}, {"actual", actual}};
}

Witness Witness::from_json(const nlohmann::json& j) {
    Witness w;
    for (const auto& [k, v] : j.at("inputs").items())
        w.inputs.emplace_back(k, v.get<std::string>());
    w.expected = j.at("expected").get<std::string>();
    w.actual = j.at("actual").get<std::string>();
    return w;
}

std::string Witness::input(const std::string& key) const {
    for (const auto& [k, v] : inputs)
        if (k == key) return v;
    throw std::out_of_range("witness has no input named " + key);
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json cov;
    if (coverage.exhaustive) {
        cov = {{"kind", "Exhaustive"}};
    } else {
        cov = {{"kind", "Sampled"}, {"samples", coverage.samples}, {"seed", coverage.seed}};
    }
    nlohmann::json pj = {{"n_bound", n_bound}, {"seed", coverage.seed}};
    for (const auto& [k, v] : params) pj[k] = v;
    nlohmann::json wj = nlohmann::json::array();
    for (const auto& w : witnesses) wj.push_back(w.to_json());
    return {{"check", check},
            {"status", status_str(status)},
            {"coverage", cov},
            {"witnesses", wj},
            {"params", pj}};
}

nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    return arr;
}

} // namespace dpv
