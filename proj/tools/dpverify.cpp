// dpverify — config-driven verification harness for divided-power structures,
// plus one-off series evaluation and substitution utilities.
//
// Exit codes: 0 all checks pass, 1 check failure or refused evaluation,
// 2 configuration/usage errors.

#include "dpv/series.hpp"
#include "dpv/suite.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace dpv;

std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trimmed(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

struct RunArgs {
    std::string config;
    bool human = false;
    unsigned jobs = 0;
};

int cmd_run(const RunArgs& args) {
    SuiteFile file = parse_suite_file(args.config);

    std::optional<std::uint64_t> seed_override;
    if (const char* env = std::getenv("DPVERIFY_SEED")) {
        try {
            seed_override = std::stoull(env);
        } catch (const std::exception&) {
            throw SuiteConfigError("DPVERIFY_SEED must be an integer, not '" + std::string(env) + "'");
        }
    }

    unsigned workers = args.jobs ? args.jobs : std::thread::hardware_concurrency();
    SuiteResult result = run_suite(file, workers, seed_override);

    std::string out_path = file.output.empty() ? file.name + ".report.json" : file.output;
    {
        std::ofstream out(out_path);
        if (!out) throw SuiteConfigError("cannot write report file: " + out_path);
        out << result.document.dump(2) << "\n";
    }

    if (args.human) std::cout << render_human(result.document);

    size_t reports = 0, failing = 0;
    for (const auto& entry : result.document["results"])
        if (entry.contains("reports"))
            for (const auto& r : entry["reports"]) {
                ++reports;
                if (r["status"] != "Pass") ++failing;
            }
    std::cout << "suite " << file.name << ": " << result.document["results"].size()
              << " job(s), " << reports << " report(s), " << failing << " failing -> " << out_path
              << "\n";

    if (!result.errors.empty()) {
        for (const std::string& e : result.errors) std::cerr << "error: " << e << "\n";
        return 2;
    }
    return result.all_pass ? 0 : 1;
}

struct SeriesArgs {
    std::string ring;
    std::string series;
    std::string var = "X";
    unsigned cap = 8;
    std::string at;      // eval: comma-separated point coordinates
    std::string sub;     // subst: substituent series text
    std::string sub_var = "X";
    unsigned f_cap = 0;  // subst: window of f (defaults to cap)
    bool totalized = false;
};

int cmd_eval(const SeriesArgs& args) {
    Ring R = parse_ring(args.ring);
    Series f = parse_series(R, args.var, args.cap, args.series);

    std::vector<RingElement> values;
    for (const std::string& part : split_on(args.at, ','))
        values.push_back(parse_element(R, trimmed(part)));
    if (values.size() != f.vars.size())
        throw SuiteConfigError("the point has " + std::to_string(values.size()) +
                               " coordinate(s) but the series has " +
                               std::to_string(f.vars.size()) + " variable(s)");

    EvalPoint b = has_eval(values);
    if (!b.ok) {
        if (!args.totalized) {
            std::cerr << "refused: " << b.reason << "\n"
                      << "hint: --totalized substitutes the documented dummy value\n";
            return 1;
        }
        std::cerr << "warning: point refused (" << b.reason
                  << "); the totalized variant returns the dummy zero and satisfies no"
                  << " algebraic laws\n";
        std::cout << eval_total(f, hom_identity(R), b).str() << "\n";
        return 0;
    }
    std::cout << eval(f, b).str() << "\n";
    return 0;
}

int cmd_subst(const SeriesArgs& args) {
    Ring R = parse_ring(args.ring);
    unsigned f_cap = args.f_cap ? args.f_cap : args.cap;
    Series f = parse_series(R, args.var, f_cap, args.series);
    Series g = parse_series(R, args.sub_var, args.cap, args.sub);

    SubstPoint b = has_subst({g});
    if (!b.ok) {
        if (!args.totalized) {
            std::cerr << "refused: " << b.reason << "\n"
                      << "hint: --totalized substitutes the documented dummy value\n";
            return 1;
        }
        std::cerr << "warning: substituent refused (" << b.reason
                  << "); the totalized variant returns the dummy zero and satisfies no"
                  << " algebraic laws\n";
        std::cout << series_zero(R, g.vars, g.cap).str() << "\n";
        return 0;
    }
    std::cout << subst(f, b).str() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dpverify: verification harness for divided-power structures"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "run the checks of a suite config (.toml or .json)");
    run->add_option("config", run_args.config, "suite config file")->required();
    run->add_flag("--human", run_args.human, "print a human-readable table");
    run->add_option("--jobs", run_args.jobs, "worker threads (default: hardware concurrency)");

    SeriesArgs eval_args;
    CLI::App* ev = app.add_subcommand("eval", "evaluate a truncated series at a nilpotent point");
    ev->add_option("--ring", eval_args.ring, "coefficient ring, e.g. Z/8 or Q")->required();
    ev->add_option("--series", eval_args.series, "series text, e.g. \"1 + 2*X - X^3\"")->required();
    ev->add_option("--var", eval_args.var, "variable name (default X)");
    ev->add_option("--cap", eval_args.cap, "total-degree window (default 8)");
    ev->add_option("--at", eval_args.at, "point coordinates, comma separated")->required();
    ev->add_flag("--totalized", eval_args.totalized,
                 "return the dummy zero instead of refusing (prints a warning)");

    SeriesArgs subst_args;
    CLI::App* su = app.add_subcommand("subst", "substitute one series into another");
    su->add_option("--ring", subst_args.ring, "coefficient ring")->required();
    su->add_option("--series", subst_args.series, "outer series text")->required();
    su->add_option("--var", subst_args.var, "outer variable name (default X)");
    su->add_option("--f-cap", subst_args.f_cap, "outer window (default: --cap)");
    su->add_option("--sub", subst_args.sub, "substituent series text")->required();
    su->add_option("--sub-var", subst_args.sub_var, "substituent variable name (default X)");
    su->add_option("--cap", subst_args.cap, "output window (default 8)");
    su->add_flag("--totalized", subst_args.totalized,
                 "return the dummy zero instead of refusing (prints a warning)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // --help exits 0; usage errors are config errors
    }

    try {
        if (run->parsed()) return cmd_run(run_args);
        if (ev->parsed()) return cmd_eval(eval_args);
        if (su->parsed()) return cmd_subst(subst_args);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
