#pragma once

#include "dpv/constructions.hpp"

#include <json.hpp>

#include <optional>

namespace dpv {

// Configuration problems: unknown families or check names, missing
// parameters, unreadable files.  The run command exits 2 on these and 1 on
// check failures, so a planted violation and a broken config stay distinct.
struct SuiteConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Overwrite one table entry after tabulating — planted-violation material
// for exercising the failure paths end to end.
struct PlantSpec {
    unsigned n_max = 12;
    unsigned at_n = 0;
    std::string at_x;
    std::string value;
};

// One ring/ideal/construction plus the checks to run against it.
struct SuiteJob {
    std::string label;
    std::string ring_spec;
    std::vector<std::string> ideal_gens;
    std::string construction;
    std::vector<std::string> checks;
    unsigned n_bound = 6;
    unsigned degree_cap = 8;
    bool exhaustive = true;
    unsigned samples = 64;
    std::uint64_t seed = 1;
    std::optional<PlantSpec> plant;
    nlohmann::json extra; // construction/check parameters: n, p, quotient, ideal2, ...
    nlohmann::json echo;  // the raw config entry, reproduced in the report

    CheckOptions options() const;
};

struct SuiteFile {
    std::string name;
    std::string output; // report path; empty means "<name>.report.json"
    std::vector<SuiteJob> jobs;
};

// Check names the config may use, in registry order.
const std::vector<std::string>& known_checks();
// Construction names the config may use.
const std::vector<std::string>& known_constructions();

// Validates everything that can be validated without running: ring specs,
// construction and check names, per-check parameters, seeded sampling.
SuiteFile parse_suite(const nlohmann::json& doc, const std::string& default_name);
// Dispatches on extension: .toml or .json.
SuiteFile parse_suite_file(const std::string& path);

// The ring/ideal/construction factory used by run_job, exposed so a failed
// report's witness can be replayed against a freshly built structure.
DP build_job_dp(const SuiteJob& job);

// Runs every check of one job; reports appear in the order of job.checks.
std::vector<VerificationReport> run_job(const SuiteJob& job);

struct SuiteResult {
    nlohmann::json document; // {meta: {...}, results: [...]}
    bool all_pass = false;
    std::vector<std::string> errors; // jobs that failed to build or run
};

// Runs jobs on worker threads; results keep config order regardless of
// completion order.  seed_override reseeds every sampled job (the
// DPVERIFY_SEED hook) and is recorded in the meta block.
SuiteResult run_suite(const SuiteFile& file, unsigned workers = 1,
                      std::optional<std::uint64_t> seed_override = std::nullopt);

// The meta block is the only place a timestamp lives; everything under
// "results" is a pure function of config and seed.
std::string render_human(const nlohmann::json& document);

} // namespace dpv
