#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace dpv {

enum class Status { Pass, Fail, Inconclusive };

std::string status_str(Status s);

// One counterexample: named inputs in the ring's element grammar plus the two
// sides that were expected to agree.  Everything is a string so a witness can
// be serialized, shipped, and replayed later.
struct Witness {
    std::vector<std::pair<std::string, std::string>> inputs;
    std::string expected;
    std::string actual;

    nlohmann::json to_json() const;
    static Witness from_json(const nlohmann::json& j);
    std::string input(const std::string& key) const; // throws if absent
};

struct Coverage {
    bool exhaustive = true;
    unsigned samples = 0;   // sampled mode
    std::uint64_t seed = 0; // sampled mode

    static Coverage Exhaustive() { return {}; }
    static Coverage Sampled(unsigned samples, std::uint64_t seed) {
        return {false, samples, seed};
    }
};

struct VerificationReport {
    std::string check;
    Status status = Status::Pass;
    Coverage coverage;
    std::vector<Witness> witnesses;
    unsigned n_bound = 0;
    // free-form context (ring, ideal, construction, hypothesis flags, ...)
    std::map<std::string, std::string> params;

    void record_failure(Witness w) {
        status = Status::Fail;
        witnesses.push_back(std::move(w));
    }
    bool passed() const { return status == Status::Pass; }

    nlohmann::json to_json() const;
};

nlohmann::json reports_to_json(const std::vector<VerificationReport>& reports);

} // namespace dpv
