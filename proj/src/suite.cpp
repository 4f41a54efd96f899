#include "dpv/suite.hpp"

#include "dpv/combinat.hpp"
#include "dpv/exponential.hpp"
#include "dpv/toml.hpp"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace dpv {

using nlohmann::json;

namespace {

[[noreturn]] void bad_config(const std::string& msg) {
    throw SuiteConfigError("config: " + msg);
}

// ---------------------------------------------------------------------------
// Parsing and validation.  Everything checkable without running a structure
// is rejected here, so `run` can reserve exit 1 for genuine check failures.

const std::set<std::string> kTopKeys = {"name", "output", "suite"};
const std::set<std::string> kJobKeys = {
    "label",     "ring",       "ideal",         "construction", "checks",
    "n_bound",   "degree_cap", "mode",          "samples",      "seed",
    "corrupt_n", "corrupt_x",  "corrupt_value", "corrupt_n_max",
    "quotient",  "gens",       "ideal2",        "construction2", "p", "p2", "n", "n2"};

std::string want_string(const json& e, const std::string& key, const std::string& where) {
    if (!e.contains(key)) bad_config(where + ": missing required key '" + key + "'");
    if (!e[key].is_string()) bad_config(where + ": '" + key + "' must be a string");
    return e[key].get<std::string>();
}

std::uint64_t want_uint(const json& e, const std::string& key, const std::string& where,
                        std::uint64_t fallback) {
    if (!e.contains(key)) return fallback;
    if (!e[key].is_number_integer() || e[key].get<long long>() < 0)
        bad_config(where + ": '" + key + "' must be a non-negative integer");
    return static_cast<std::uint64_t>(e[key].get<long long>());
}

std::vector<std::string> want_string_list(const json& e, const std::string& key,
                                          const std::string& where) {
    if (!e.contains(key)) return {};
    if (!e[key].is_array()) bad_config(where + ": '" + key + "' must be a list");
    std::vector<std::string> out;
    for (const json& v : e[key]) {
        if (!v.is_string()) bad_config(where + ": entries of '" + key + "' must be strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

bool has_check(const SuiteJob& job, const std::string& name) {
    return std::find(job.checks.begin(), job.checks.end(), name) != job.checks.end();
}

void validate_elements(const Ring& R, const std::vector<std::string>& texts,
                       const std::string& where) {
    for (const std::string& t : texts) {
        try {
            parse_element(R, t);
        } catch (const std::exception& ex) {
            bad_config(where + ": cannot parse element '" + t + "': " + ex.what());
        }
    }
}

SuiteJob parse_job(const json& e, const std::string& where) {
    if (!e.is_object()) bad_config(where + ": each [[suite]] entry must be a table");
    for (auto it = e.begin(); it != e.end(); ++it)
        if (!kJobKeys.count(it.key())) bad_config(where + ": unknown key '" + it.key() + "'");

    SuiteJob job;
    job.echo = e;
    job.ring_spec = want_string(e, "ring", where);
    Ring R;
    try {
        R = parse_ring(job.ring_spec);
    } catch (const std::exception& ex) {
        bad_config(where + ": " + ex.what());
    }

    job.ideal_gens = want_string_list(e, "ideal", where);
    validate_elements(R, job.ideal_gens, where);

    job.construction = want_string(e, "construction", where);
    const auto& ctors = known_constructions();
    if (std::find(ctors.begin(), ctors.end(), job.construction) == ctors.end())
        bad_config(where + ": unknown construction '" + job.construction +
                   "' (known: " + join(ctors, ", ") + ")");

    job.checks = want_string_list(e, "checks", where);
    if (job.checks.empty()) bad_config(where + ": 'checks' must list at least one check");
    const auto& known = known_checks();
    for (const std::string& c : job.checks)
        if (std::find(known.begin(), known.end(), c) == known.end())
            bad_config(where + ": unknown check '" + c + "' (known: " + join(known, ", ") + ")");

    job.n_bound = static_cast<unsigned>(want_uint(e, "n_bound", where, 6));
    job.degree_cap = static_cast<unsigned>(want_uint(e, "degree_cap", where, 8));
    if (job.n_bound == 0 || job.degree_cap == 0)
        bad_config(where + ": n_bound and degree_cap must be positive");

    std::string mode = e.contains("mode") ? want_string(e, "mode", where) : "exhaustive";
    if (mode == "exhaustive") {
        job.exhaustive = true;
    } else if (mode == "sampled") {
        job.exhaustive = false;
        if (!e.contains("seed")) bad_config(where + ": sampled mode requires a seed");
        job.seed = want_uint(e, "seed", where, 1);
        job.samples = static_cast<unsigned>(want_uint(e, "samples", where, 64));
        if (job.samples == 0) bad_config(where + ": 'samples' must be positive");
    } else {
        bad_config(where + ": mode must be \"exhaustive\" or \"sampled\", not \"" + mode + "\"");
    }

    if (e.contains("corrupt_n") || e.contains("corrupt_x") || e.contains("corrupt_value")) {
        if (!(e.contains("corrupt_n") && e.contains("corrupt_x") && e.contains("corrupt_value")))
            bad_config(where + ": a plant needs corrupt_n, corrupt_x and corrupt_value together");
        PlantSpec plant;
        plant.at_n = static_cast<unsigned>(want_uint(e, "corrupt_n", where, 0));
        plant.at_x = want_string(e, "corrupt_x", where);
        plant.value = want_string(e, "corrupt_value", where);
        plant.n_max = static_cast<unsigned>(want_uint(e, "corrupt_n_max", where, 12));
        validate_elements(R, {plant.at_x, plant.value}, where);
        job.plant = plant;
    }

    job.extra = json::object();
    for (const char* key : {"quotient", "gens", "ideal2", "construction2", "p", "p2", "n", "n2"})
        if (e.contains(key)) job.extra[key] = e[key];

    // Per-check and per-construction parameter requirements.
    if (has_check(job, "morphism") || has_check(job, "equalizer") || has_check(job, "generators")) {
        std::string q = want_string(e, "quotient", where);
        try {
            parse_ring(q);
        } catch (const std::exception& ex) {
            bad_config(where + ": " + ex.what());
        }
    }
    if (has_check(job, "ideal_add_equiv")) {
        std::vector<std::string> g2 = want_string_list(e, "ideal2", where);
        if (g2.empty()) bad_config(where + ": ideal_add_equiv needs a non-empty 'ideal2' list");
        validate_elements(R, g2, where);
        if (e.contains("construction2")) {
            std::string c2 = want_string(e, "construction2", where);
            if (std::find(ctors.begin(), ctors.end(), c2) == ctors.end())
                bad_config(where + ": unknown construction '" + c2 + "'");
        }
    }
    if (has_check(job, "padic_valuation") && R->family != RingFamily::TruncatedPadic)
        bad_config(where + ": padic_valuation runs on Zp:p^N rings, not " + R->description());
    if (has_check(job, "lattice") && !job.exhaustive)
        bad_config(where + ": the lattice check is exhaustive by nature; use mode = \"exhaustive\"");
    if (job.construction == "prime_nilpotent" && !e.contains("p"))
        bad_config(where + ": prime_nilpotent needs parameter 'p'");
    if (job.construction == "inverse_factorial" && !e.contains("n"))
        bad_config(where + ": inverse_factorial needs parameter 'n'");
    if (job.construction == "padic" && R->family != RingFamily::TruncatedPadic)
        bad_config(where + ": the padic construction needs a Zp:p^N ring");

    job.label = e.contains("label")
                    ? want_string(e, "label", where)
                    : job.construction + " on " + job.ring_spec +
                          (job.ideal_gens.empty() ? "" : ", ideal (" + join(job.ideal_gens, ", ") + ")");
    return job;
}

// ---------------------------------------------------------------------------
// Factories.

DP make_construction(const std::string& name, const Ring& R, const Ideal& I, const json& extra,
                     bool second) {
    auto param = [&](const char* base) -> std::uint64_t {
        std::string key = second ? std::string(base) + "2" : std::string(base);
        if (!extra.contains(key) && second) key = base; // leg 2 falls back to the shared value
        if (!extra.contains(key)) bad_config("construction '" + name + "' needs parameter '" + key + "'");
        if (!extra[key].is_number_integer() || extra[key].get<long long>() <= 0)
            bad_config("parameter '" + key + "' must be a positive integer");
        return static_cast<std::uint64_t>(extra[key].get<long long>());
    };

    if (name == "trivial") {
        if (!I->is_zero()) bad_config("the trivial structure lives on the zero ideal");
        return dp_trivial(R);
    }
    if (name == "square_zero") return dp_square_zero(I);
    if (name == "prime_nilpotent") return dp_prime_nilpotent(I, BigInt(param("p")));
    if (name == "char_p") return dp_char_p(I);
    if (name == "inverse_factorial")
        return dp_of_invertible_factorial(I, static_cast<unsigned>(param("n")));
    if (name == "rat_algebra") return dp_rat_algebra(I);
    if (name == "padic") {
        if (R->family != RingFamily::TruncatedPadic)
            bad_config("the padic construction needs a Zp:p^N ring");
        DP d = dp_padic(R->prime, R->precision);
        if (!I->is_zero() && !ideal_eq(I, d->ideal))
            bad_config("the padic structure lives on (" + R->prime.str() + "), not " + I->key());
        return d;
    }
    bad_config("unknown construction '" + name + "'");
}

Ideal job_ideal(const SuiteJob& job, const Ring& R) {
    if (job.ideal_gens.empty()) return zero_ideal(R);
    std::vector<RingElement> gens;
    for (const std::string& g : job.ideal_gens) gens.push_back(parse_element(R, g));
    return span(R, gens);
}

RingHom make_projection(const Ring& source, const Ring& target) {
    if (source->family == RingFamily::IntegersMod && target->family == RingFamily::IntegersMod)
        return hom_mod_reduction(source, target);
    if (source->family == RingFamily::TruncatedPadic &&
        target->family == RingFamily::TruncatedPadic && source->prime == target->prime &&
        target->precision <= source->precision)
        return hom_precision_drop(source, target->precision);
    bad_config("no canonical projection from " + source->description() + " onto " +
               target->description());
}

// ---------------------------------------------------------------------------
// The checks.

void stamp(VerificationReport& r, const SuiteJob& job) {
    r.params.emplace("ring", job.ring_spec);
    r.params.emplace("construction", job.construction);
}

std::vector<RingElement> check_domain(const Ideal& I, const CheckOptions& opts) {
    if (opts.exhaustive) return ideal_elements(I);
    std::mt19937_64 rng(opts.seed);
    std::vector<RingElement> out;
    for (unsigned i = 0; i < opts.samples; ++i) out.push_back(sample_ideal_element(I, rng));
    return out;
}

std::vector<VerificationReport> run_exp_check(const DP& dp, const SuiteJob& job,
                                              const CheckOptions& opts) {
    std::vector<VerificationReport> out;
    out.push_back(dp_exp_linear(dp, job.degree_cap, opts));

    VerificationReport r;
    r.check = "exp_certificates";
    r.coverage = opts.coverage();
    r.n_bound = job.degree_cap;
    stamp(r, job);
    for (const RingElement& a : check_domain(dp->ideal, opts)) {
        try {
            ExponentialElement e = dp_exp(dp, a, job.degree_cap);
            ExpCertificate cross = is_exponential_subst_route(e.series);
            if (!cross.ok)
                r.record_failure({{{"a", a.str()}, {"route", "substitution"}},
                                  "exponential series",
                                  "fails at (" + std::to_string(cross.fail_i) + ", " +
                                      std::to_string(cross.fail_j) + "): " + cross.detail});
        } catch (const std::logic_error& ex) {
            r.record_failure({{{"a", a.str()}, {"route", "binomial"}},
                              "exponential series", ex.what()});
        }
    }
    out.push_back(std::move(r));
    return out;
}

VerificationReport run_padic_valuation(const DP& dp, const SuiteJob& job,
                                       const CheckOptions& opts) {
    const Ring& R = dp->ring;
    const BigInt& p = R->prime;
    VerificationReport r;
    r.check = "padic_valuation";
    r.coverage = opts.coverage();
    r.n_bound = opts.n_bound;
    stamp(r, job);
    r.params["p"] = p.str();
    r.params["precision"] = std::to_string(R->precision);

    for (const RingElement& x : check_domain(dp->ideal, opts)) {
        BigInt rep = x.residue();
        if (rep == 0) continue; // x^n/n! = 0, valuation unbounded
        long vx = static_cast<long>(padic_valuation(rep, p));
        for (unsigned n = 1; n <= opts.n_bound; ++n) {
            // Route one: v_p(n!) through the digit-sum identity.
            BigInt num = BigInt(n) - digit_sum(n, p);
            if (num % (p - 1) != 0)
                throw std::logic_error("digit-sum identity produced a non-integer valuation");
            long v_fact = static_cast<long>(num / (p - 1));
            long v_formula = static_cast<long>(n) * vx - v_fact;
            // Route two: factor the exact rational x^n / n!.
            BigRat q(int_pow(rep, n), factorial(n));
            long v_direct = padic_valuation(q, p);
            if (v_formula != v_direct || v_direct < 1)
                r.record_failure({{{"x", x.str()}, {"n", std::to_string(n)}},
                                  "matching valuations >= 1",
                                  "formula " + std::to_string(v_formula) + ", direct " +
                                      std::to_string(v_direct)});
        }
    }
    return r;
}

std::vector<VerificationReport> run_morphism_check(const DP& dp, const SuiteJob& job,
                                                   const CheckOptions& opts) {
    Ring target = parse_ring(job.extra.at("quotient").get<std::string>());
    RingHom f = make_projection(dp->ring, target);
    DP qdp = quotient_dp(dp, f, opts);
    std::vector<VerificationReport> out = quotient_audit(dp, f, qdp, opts);
    std::vector<VerificationReport> axioms = check_axioms(qdp, opts);
    out.insert(out.end(), axioms.begin(), axioms.end());
    return out;
}

VerificationReport run_equalizer_check(const DP& dp, const SuiteJob& job,
                                       const CheckOptions& opts) {
    Ring target = parse_ring(job.extra.at("quotient").get<std::string>());
    RingHom f = make_projection(dp->ring, target);
    DP qdp = quotient_dp(dp, f, opts);
    return dp_equalizer(f, dp, qdp, opts).second;
}

std::vector<VerificationReport> run_generators_check(const DP& dp, const SuiteJob& job,
                                                     const CheckOptions& opts) {
    Ring target = parse_ring(job.extra.at("quotient").get<std::string>());
    RingHom f = make_projection(dp->ring, target);
    DP qdp = quotient_dp(dp, f, opts);

    std::vector<std::string> texts = job.ideal_gens;
    if (job.extra.contains("gens")) {
        texts.clear();
        for (const json& g : job.extra["gens"]) texts.push_back(g.get<std::string>());
    }
    std::vector<RingElement> S;
    for (const std::string& t : texts) S.push_back(parse_element(dp->ring, t));

    std::vector<VerificationReport> out;
    out.push_back(dp_morphism_from_generators(f, dp, qdp, S, opts));
    out.push_back(dp_unique_on_generators(dp, tabulate(dp, 2 * opts.n_bound), S, opts));
    return out;
}

std::vector<VerificationReport> run_lattice_check(const DP& dp, const SuiteJob& job,
                                                  const CheckOptions& opts) {
    const Ring& R = dp->ring;
    SubDPLattice L = sub_dp_lattice(dp, opts);

    std::vector<Ideal> all_ideals = enumerate_ideals(R, 2);
    if (!ideal_enumeration_complete(R, all_ideals)) all_ideals = enumerate_ideals(R, 3);
    bool complete = ideal_enumeration_complete(R, all_ideals);

    auto fresh = [&](const char* check) {
        VerificationReport r;
        r.check = check;
        r.coverage = Coverage::Exhaustive();
        r.n_bound = opts.n_bound;
        stamp(r, job);
        return r;
    };
    std::vector<VerificationReport> out;

    { // the lattice holds exactly the ideals an independent filter finds
        VerificationReport r = fresh("lattice_enumeration");
        if (!complete) {
            r.status = Status::Inconclusive;
            r.params["enumeration"] = "incomplete at generator cap 3";
        } else {
            std::set<std::string> expected;
            for (const Ideal& J : all_ideals)
                if (sub_dp(dp, J, opts)) expected.insert(J->key());
            std::set<std::string> actual;
            for (const Ideal& J : L.all) actual.insert(J->key());
            for (const std::string& k : expected)
                if (!actual.count(k))
                    r.record_failure({{{"ideal", k}}, "listed in the lattice", "missing"});
            for (const std::string& k : actual)
                if (!expected.count(k))
                    r.record_failure({{{"ideal", k}}, "a sub-dp-ideal", "listed but fails the filter"});
            r.params["count"] = std::to_string(L.all.size());
        }
        out.push_back(std::move(r));
    }
    { // closure under sup/inf, and the empty-Inf convention
        VerificationReport r = fresh("lattice_closure");
        for (const Ideal& a : L.all)
            for (const Ideal& b : L.all) {
                if (!L.contains(L.sup(a, b)))
                    r.record_failure({{{"a", a->key()}, {"b", b->key()}, {"op", "sup"}},
                                      "closed", "escapes the lattice"});
                if (!L.contains(L.inf(a, b)))
                    r.record_failure({{{"a", a->key()}, {"b", b->key()}, {"op", "inf"}},
                                      "closed", "escapes the lattice"});
            }
        if (!ideal_eq(L.Inf({}), dp->ideal))
            r.record_failure({{{"op", "Inf"}, {"arg", "empty set"}}, dp->ideal->key(),
                              L.Inf({})->key()});
        if (!ideal_eq(L.Inf(L.all), L.bot))
            r.record_failure({{{"op", "Inf"}, {"arg", "all"}}, L.bot->key(), L.Inf(L.all)->key()});
        out.push_back(std::move(r));
    }
    { // span via filtered Inf agrees with span via gamma orbits
        VerificationReport r = fresh("lattice_span");
        std::vector<RingElement> elems = ideal_elements(dp->ideal);
        std::vector<std::vector<RingElement>> subsets;
        subsets.push_back({});
        for (size_t i = 0; i < elems.size(); ++i) {
            subsets.push_back({elems[i]});
            for (size_t j = i + 1; j < elems.size(); ++j) subsets.push_back({elems[i], elems[j]});
        }
        for (const auto& S : subsets) {
            Ideal via_filter = L.span_filter(S);
            Ideal via_gamma = L.span_gamma(S);
            if (!ideal_eq(via_filter, via_gamma)) {
                std::vector<std::string> names;
                for (const auto& s : S) names.push_back(s.str());
                r.record_failure({{{"S", "{" + join(names, ", ") + "}"}},
                                  via_filter->key(), via_gamma->key()});
            }
        }
        out.push_back(std::move(r));
    }
    { // I*J is a sub-dp-ideal for every ideal J
        VerificationReport r = fresh("lattice_products");
        for (const Ideal& J : all_ideals) {
            VerificationReport sub = mul_sub_dp(dp, J, opts);
            if (!sub.passed())
                for (const Witness& w : sub.witnesses) {
                    Witness tagged = w;
                    tagged.inputs.emplace_back("J", J->key());
                    r.record_failure(std::move(tagged));
                }
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<VerificationReport> run_ideal_add_check(const DP& dp, const SuiteJob& job,
                                                    const CheckOptions& opts) {
    const Ring& R = dp->ring;
    std::vector<RingElement> gens2;
    for (const json& g : job.extra.at("ideal2")) gens2.push_back(parse_element(R, g.get<std::string>()));
    Ideal I2 = span(R, gens2);
    std::string ctor2 = job.extra.contains("construction2")
                            ? job.extra["construction2"].get<std::string>()
                            : job.construction;
    DP right = make_construction(ctor2, R, I2, job.extra, true);

    std::vector<VerificationReport> out;
    out.push_back(check_ideal_add_compatible(dp, right, opts));

    DP direct = ideal_add_dp_v1(dp, right, opts);
    DP exponential = ideal_add_dp(dp, right, opts);

    VerificationReport r;
    r.check = "ideal_add_equiv";
    r.coverage = Coverage::Exhaustive();
    r.n_bound = opts.n_bound;
    stamp(r, job);
    r.params["left"] = dp->ideal->key();
    r.params["right"] = I2->key();
    for (const RingElement& z : ideal_elements(exponential->ideal))
        for (unsigned n = 0; n <= opts.n_bound; ++n) {
            RingElement a = dpow(direct, n, z);
            RingElement b = dpow(exponential, n, z);
            if (a != b)
                r.record_failure({{{"n", std::to_string(n)}, {"z", z.str()}}, a.str(), b.str()});
        }
    out.push_back(std::move(r));

    VerificationReport u1 = ideal_add_uniqueness(dp, right, direct, opts);
    u1.params["candidate"] = "direct_route";
    out.push_back(std::move(u1));
    VerificationReport u2 = ideal_add_uniqueness(dp, right, exponential, opts);
    u2.params["candidate"] = "exponential_route";
    out.push_back(std::move(u2));

    std::vector<VerificationReport> axioms = check_axioms(exponential, opts);
    out.insert(out.end(), axioms.begin(), axioms.end());
    return out;
}

// ---------------------------------------------------------------------------

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

} // namespace

CheckOptions SuiteJob::options() const {
    CheckOptions opts;
    opts.n_bound = n_bound;
    opts.exhaustive = exhaustive;
    opts.samples = samples;
    opts.seed = seed;
    return opts;
}

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "axioms", "exp", "morphism", "equalizer", "generators",
        "lattice", "ideal_add_equiv", "padic_valuation"};
    return names;
}

const std::vector<std::string>& known_constructions() {
    static const std::vector<std::string> names = {
        "trivial", "square_zero", "prime_nilpotent", "char_p",
        "inverse_factorial", "rat_algebra", "padic"};
    return names;
}

SuiteFile parse_suite(const json& doc, const std::string& default_name) {
    if (!doc.is_object()) bad_config("top level must be a table");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!kTopKeys.count(it.key())) bad_config("unknown top-level key '" + it.key() + "'");

    SuiteFile out;
    out.name = doc.contains("name") ? want_string(doc, "name", "top level") : default_name;
    out.output = doc.contains("output") ? want_string(doc, "output", "top level") : "";

    if (!doc.contains("suite") || !doc["suite"].is_array() || doc["suite"].empty())
        bad_config("a suite file needs at least one [[suite]] entry");
    size_t i = 0;
    for (const json& e : doc["suite"]) {
        out.jobs.push_back(parse_job(e, "suite[" + std::to_string(i) + "]"));
        ++i;
    }
    return out;
}

SuiteFile parse_suite_file(const std::string& path) {
    std::string stem = path;
    if (size_t slash = stem.find_last_of('/'); slash != std::string::npos)
        stem = stem.substr(slash + 1);
    if (size_t dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);

    json doc;
    try {
        if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
            std::ifstream in(path);
            if (!in) bad_config("cannot open config file: " + path);
            doc = json::parse(in);
        } else {
            doc = parse_toml_file(path);
        }
    } catch (const SuiteConfigError&) {
        throw;
    } catch (const std::exception& ex) {
        bad_config(std::string(ex.what()));
    }
    return parse_suite(doc, stem);
}

DP build_job_dp(const SuiteJob& job) {
    Ring R;
    try {
        R = parse_ring(job.ring_spec);
    } catch (const std::exception& ex) {
        bad_config(ex.what());
    }
    Ideal I = job_ideal(job, R);
    DP dp = make_construction(job.construction, R, I, job.extra, false);
    if (job.plant) {
        const PlantSpec& plant = *job.plant;
        dp = corrupt_table(dp, plant.n_max, plant.at_n, parse_element(R, plant.at_x),
                           parse_element(R, plant.value));
    }
    return dp;
}

std::vector<VerificationReport> run_job(const SuiteJob& job) {
    DP dp = build_job_dp(job);
    CheckOptions opts = job.options();

    std::vector<VerificationReport> out;
    auto append = [&out](std::vector<VerificationReport> more) {
        for (VerificationReport& r : more) out.push_back(std::move(r));
    };

    for (const std::string& check : job.checks) {
        if (check == "axioms") {
            append(check_axioms(dp, opts));
        } else if (check == "exp") {
            append(run_exp_check(dp, job, opts));
        } else if (check == "morphism") {
            append(run_morphism_check(dp, job, opts));
        } else if (check == "equalizer") {
            out.push_back(run_equalizer_check(dp, job, opts));
        } else if (check == "generators") {
            append(run_generators_check(dp, job, opts));
        } else if (check == "lattice") {
            append(run_lattice_check(dp, job, opts));
        } else if (check == "ideal_add_equiv") {
            append(run_ideal_add_check(dp, job, opts));
        } else if (check == "padic_valuation") {
            out.push_back(run_padic_valuation(dp, job, opts));
        } else {
            bad_config("unknown check '" + check + "'");
        }
    }
    return out;
}

SuiteResult run_suite(const SuiteFile& file, unsigned workers,
                      std::optional<std::uint64_t> seed_override) {
    std::vector<SuiteJob> jobs = file.jobs;
    if (seed_override)
        for (SuiteJob& j : jobs) j.seed = *seed_override;

    const size_t n = jobs.size();
    std::vector<std::vector<VerificationReport>> reports(n);
    std::vector<std::string> errors(n);

    std::atomic<size_t> cursor{0};
    auto work = [&]() {
        while (true) {
            size_t i = cursor.fetch_add(1);
            if (i >= n) return;
            try {
                reports[i] = run_job(jobs[i]);
            } catch (const std::exception& ex) {
                errors[i] = ex.what();
            }
        }
    };
    unsigned w = std::max<unsigned>(1, std::min<unsigned>(workers, static_cast<unsigned>(n)));
    if (w <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < w; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    SuiteResult res;
    res.all_pass = true;
    json results = json::array();
    for (size_t i = 0; i < n; ++i) {
        json entry;
        entry["label"] = jobs[i].label;
        entry["config"] = jobs[i].echo;
        if (!errors[i].empty()) {
            entry["error"] = errors[i];
            res.errors.push_back(jobs[i].label + ": " + errors[i]);
            res.all_pass = false;
        } else {
            entry["reports"] = reports_to_json(reports[i]);
            for (const VerificationReport& r : reports[i])
                if (!r.passed()) res.all_pass = false;
        }
        results.push_back(std::move(entry));
    }

    json meta;
    meta["suite"] = file.name;
    meta["generated"] = iso_now(); // the only non-reproducible field
    meta["seed_override"] = seed_override ? json(*seed_override) : json(nullptr);

    res.document = json::object();
    res.document["meta"] = std::move(meta);
    res.document["results"] = std::move(results);
    return res;
}

std::string render_human(const json& document) {
    struct Row {
        std::string label, check, status, coverage, detail;
    };
    std::vector<Row> rows;
    for (const json& entry : document.at("results")) {
        std::string label = entry.value("label", "?");
        if (entry.contains("error")) {
            rows.push_back({label, "-", "ERROR", "-", entry["error"].get<std::string>()});
            continue;
        }
        for (const json& r : entry.at("reports")) {
            Row row;
            row.label = label;
            row.check = r.value("check", "?");
            row.status = r.value("status", "?");
            const json& cov = r.at("coverage");
            row.coverage = cov.value("kind", "") == "Exhaustive"
                               ? "exhaustive"
                               : "sampled(" + std::to_string(cov.value("samples", 0u)) + ", seed " +
                                     std::to_string(cov.value("seed", 0ull)) + ")";
            size_t nw = r.contains("witnesses") ? r["witnesses"].size() : 0;
            row.detail = nw ? std::to_string(nw) + " witness(es)" : "";
            rows.push_back(std::move(row));
        }
    }

    size_t wl = 5, wc = 5, ws = 6, wv = 8;
    for (const Row& r : rows) {
        wl = std::max(wl, r.label.size());
        wc = std::max(wc, r.check.size());
        ws = std::max(ws, r.status.size());
        wv = std::max(wv, r.coverage.size());
    }
    auto pad = [](const std::string& s, size_t w) {
        return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
    };
    std::ostringstream out;
    out << pad("label", wl) << "  " << pad("check", wc) << "  " << pad("status", ws) << "  "
        << pad("coverage", wv) << "  notes\n";
    out << std::string(wl + wc + ws + wv + 11, '-') << "\n";
    size_t failed = 0;
    for (const Row& r : rows) {
        out << pad(r.label, wl) << "  " << pad(r.check, wc) << "  " << pad(r.status, ws) << "  "
            << pad(r.coverage, wv) << "  " << r.detail << "\n";
        if (r.status != "Pass") ++failed;
    }
    out << rows.size() << " report(s), " << failed << " not passing\n";
    return out.str();
}

} // namespace dpv
