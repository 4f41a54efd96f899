#include "dpv/dpcore.hpp"

#include "dpv/combinat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dpv {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string witness_text(const Witness& w) {
    std::string s = "{";
    for (const auto& [k, v] : w.inputs) s += k + "=" + v + " ";
    return s + "expected=" + w.expected + " actual=" + w.actual + "}";
}

} // namespace

RingElement dpow(const DP& dp, unsigned n, const RingElement& x) {
    if (!same_ring(dp->ring, x.ring())) fail("dpow: element from a different ring");
    if (!mem(dp->ideal, x)) return ring_zero(dp->ring); // total-function convention
    if (dp->n_max && n > *dp->n_max)
        throw DPowBoundError(dp->name + ": index " + std::to_string(n) +
                             " exceeds the tabulated bound " + std::to_string(*dp->n_max));
    return dp->eval(n, x);
}

namespace {

std::shared_ptr<DividedPowers> raw_dp(Ring R, Ideal I, DPRule rule, std::string name,
                                      std::function<RingElement(unsigned, const RingElement&)> eval,
                                      std::optional<unsigned> n_max) {
    auto d = std::make_shared<DividedPowers>();
    d->ring = std::move(R);
    d->ideal = std::move(I);
    d->rule = rule;
    d->name = std::move(name);
    d->eval = std::move(eval);
    d->n_max = n_max;
    return d;
}

} // namespace

DP make_dp(Ring R, Ideal I, DPRule rule, std::string name,
           std::function<RingElement(unsigned, const RingElement&)> eval,
           std::optional<unsigned> n_max) {
    if (!same_ring(I->ring, R)) fail("dp structure: ideal from a different ring");
    DP d = raw_dp(std::move(R), std::move(I), rule, std::move(name), std::move(eval), n_max);
    // spot checks; the axiom verifier covers these laws in full
    std::vector<RingElement> probe{ring_zero(d->ring)};
    for (const auto& g : d->ideal->generators) {
        probe.push_back(g);
        if (probe.size() >= 4) break;
    }
    for (const auto& x : probe) {
        if (!dpow(d, 0, x).is_one())
            throw std::logic_error(d->name + ": dpow(0, " + x.str() + ") != 1");
        if (dpow(d, 1, x) != x)
            throw std::logic_error(d->name + ": dpow(1, " + x.str() + ") != identity");
    }
    return d;
}

namespace {

using Table = std::map<std::pair<unsigned, std::string>, RingElement>;

DP from_table(const DP& src, unsigned n_max, Table table, const std::string& suffix) {
    auto shared = std::make_shared<Table>(std::move(table));
    auto eval = [shared, name = src->name](unsigned n, const RingElement& x) {
        auto it = shared->find({n, x.str()});
        if (it == shared->end())
            throw std::logic_error(name + ": missing tabulated value at n=" + std::to_string(n) +
                                   ", x=" + x.str());
        return it->second;
    };
    return raw_dp(src->ring, src->ideal, DPRule::Tabulated, src->name + suffix, eval, n_max);
}

Table build_table(const DP& dp, unsigned n_max) {
    Table t;
    for (const auto& x : ideal_elements(dp->ideal))
        for (unsigned n = 0; n <= n_max; ++n) t[{n, x.str()}] = dpow(dp, n, x);
    return t;
}

} // namespace

DP tabulate(const DP& dp, unsigned n_max) {
    return from_table(dp, n_max, build_table(dp, n_max), "#table");
}

DP corrupt_table(const DP& dp, unsigned n_max, unsigned at_n, const RingElement& at_x,
                 const RingElement& value) {
    Table t = build_table(dp, n_max);
    auto key = std::make_pair(at_n, at_x.str());
    if (!t.count(key)) fail("corrupt_table: target entry outside the table");
    t[key] = value;
    return from_table(dp, n_max, std::move(t), "#corrupted");
}

// ---------------------------------------------------------------------------
// Axiom verification

namespace {

// The two sides of one instance of a defining law.  Shared by the checker and
// the witness replayer so a recorded counterexample recomputes identically.
std::pair<RingElement, RingElement> law_sides(const DP& dp, const std::string& check,
                                              unsigned n, unsigned m, const RingElement& x,
                                              const RingElement& y, const RingElement& a) {
    const Ring& R = dp->ring;
    if (check == "dpow_zero") return {dpow(dp, 0, x), ring_one(R)};
    if (check == "dpow_one") return {dpow(dp, 1, x), x};
    if (check == "dpow_add") {
        RingElement lhs = dpow(dp, n, x + y);
        RingElement rhs = ring_zero(R);
        for (unsigned k = 0; k <= n; ++k)
            rhs = rhs + dpow(dp, k, x) * dpow(dp, n - k, y);
        return {lhs, rhs};
    }
    if (check == "dpow_smul")
        return {dpow(dp, n, a * x), ring_pow(a, n) * dpow(dp, n, x)};
    if (check == "dpow_mul")
        return {dpow(dp, m, x) * dpow(dp, n, x),
                from_int(R, choose(m + n, m)) * dpow(dp, m + n, x)};
    if (check == "dpow_comp")
        return {dpow(dp, m, dpow(dp, n, x)),
                from_int(R, uniform_bell(m, n)) * dpow(dp, m * n, x)};
    fail("unknown law: " + check);
}

struct AxiomDomain {
    std::vector<RingElement> xs, ys, as;
    bool exhaustive;
};

AxiomDomain axiom_domain(const DP& dp, const CheckOptions& opts) {
    AxiomDomain d;
    d.exhaustive = opts.exhaustive;
    if (opts.exhaustive) {
        if (!dp->ring->is_finite())
            throw std::domain_error("exhaustive axiom check needs a finite ring; use sampled mode");
        d.xs = ideal_elements(dp->ideal);
        d.ys = d.xs;
        d.as = enumerate_elements(dp->ring);
    } else {
        std::mt19937_64 rng(opts.seed);
        for (unsigned i = 0; i < opts.samples; ++i) d.xs.push_back(sample_ideal_element(dp->ideal, rng));
        for (unsigned i = 0; i < opts.samples; ++i) d.ys.push_back(sample_ideal_element(dp->ideal, rng));
        for (unsigned i = 0; i < opts.samples; ++i) d.as.push_back(sample_element(dp->ring, rng));
    }
    return d;
}

constexpr unsigned kMaxWitnesses = 5;

void note_violation(VerificationReport& rep, Witness w) {
    if (rep.witnesses.size() < kMaxWitnesses) rep.record_failure(std::move(w));
    else rep.status = Status::Fail;
}

} // namespace

std::vector<VerificationReport> check_axioms(const DP& dp, const CheckOptions& opts) {
    AxiomDomain dom = axiom_domain(dp, opts);
    const unsigned cap = dp->n_max.value_or(~0u);
    const unsigned nb = std::min(opts.n_bound, cap);
    const unsigned nb_sum = std::min(2 * opts.n_bound, cap); // for dpow_mul index m+n

    auto fresh = [&](const char* check) {
        VerificationReport r;
        r.check = check;
        r.coverage = opts.coverage();
        r.n_bound = opts.n_bound;
        r.params["structure"] = dp->name;
        r.params["ring"] = dp->ring->description();
        r.params["ideal"] = dp->ideal->key();
        return r;
    };
    // memoized dpow: the exhaustive loops revisit the same (n, element) pairs
    std::map<std::pair<unsigned, std::string>, RingElement> memo;
    auto mdpow = [&](unsigned n, const RingElement& x) {
        auto key = std::make_pair(n, x.str());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        RingElement v = dpow(dp, n, x);
        memo.emplace(std::move(key), v);
        return v;
    };

    std::vector<VerificationReport> out;

    { // gamma_0 = 1
        VerificationReport r = fresh("dpow_zero");
        for (const auto& x : dom.xs) {
            auto [lhs, rhs] = law_sides(dp, "dpow_zero", 0, 0, x, x, x);
            if (lhs != rhs)
                note_violation(r, {{{"x", x.str()}}, rhs.str(), lhs.str()});
        }
        out.push_back(std::move(r));
    }
    { // gamma_1 = identity
        VerificationReport r = fresh("dpow_one");
        for (const auto& x : dom.xs) {
            auto [lhs, rhs] = law_sides(dp, "dpow_one", 1, 0, x, x, x);
            if (lhs != rhs)
                note_violation(r, {{{"x", x.str()}}, rhs.str(), lhs.str()});
        }
        out.push_back(std::move(r));
    }
    { // gamma_n(x) stays in the ideal
        VerificationReport r = fresh("dpow_mem");
        for (const auto& x : dom.xs)
            for (unsigned n = 1; n <= nb; ++n) {
                RingElement v = mdpow(n, x);
                if (!mem(dp->ideal, v))
                    note_violation(r, {{{"n", std::to_string(n)}, {"x", x.str()}},
                                       "element of " + dp->ideal->key(),
                                       v.str()});
            }
        out.push_back(std::move(r));
    }
    { // addition law
        VerificationReport r = fresh("dpow_add");
        auto run = [&](const RingElement& x, const RingElement& y) {
            for (unsigned n = 0; n <= nb; ++n) {
                RingElement lhs = mdpow(n, x + y);
                RingElement rhs = ring_zero(dp->ring);
                for (unsigned k = 0; k <= n; ++k)
                    rhs = rhs + mdpow(k, x) * mdpow(n - k, y);
                if (lhs != rhs)
                    note_violation(r, {{{"n", std::to_string(n)}, {"x", x.str()}, {"y", y.str()}},
                                       rhs.str(), lhs.str()});
            }
        };
        if (dom.exhaustive) {
            for (const auto& x : dom.xs)
                for (const auto& y : dom.ys) run(x, y);
        } else {
            for (size_t i = 0; i < dom.xs.size(); ++i) run(dom.xs[i], dom.ys[i]);
        }
        out.push_back(std::move(r));
    }
    { // scalar law
        VerificationReport r = fresh("dpow_smul");
        auto run = [&](const RingElement& a, const RingElement& x) {
            RingElement apow = ring_one(dp->ring);
            for (unsigned n = 0; n <= nb; ++n) {
                RingElement lhs = mdpow(n, a * x);
                RingElement rhs = apow * mdpow(n, x);
                if (lhs != rhs)
                    note_violation(r, {{{"n", std::to_string(n)}, {"a", a.str()}, {"x", x.str()}},
                                       rhs.str(), lhs.str()});
                apow = apow * a;
            }
        };
        if (dom.exhaustive) {
            for (const auto& a : dom.as)
                for (const auto& x : dom.xs) run(a, x);
        } else {
            for (size_t i = 0; i < dom.xs.size(); ++i) run(dom.as[i], dom.xs[i]);
        }
        out.push_back(std::move(r));
    }
    { // product law with binomial coefficient
        VerificationReport r = fresh("dpow_mul");
        for (const auto& x : dom.xs)
            for (unsigned m = 0; m <= nb; ++m)
                for (unsigned n = m; n <= nb && m + n <= nb_sum; ++n) {
                    RingElement lhs = mdpow(m, x) * mdpow(n, x);
                    RingElement rhs = from_int(dp->ring, choose(m + n, m)) * mdpow(m + n, x);
                    if (lhs != rhs)
                        note_violation(r, {{{"m", std::to_string(m)},
                                            {"n", std::to_string(n)},
                                            {"x", x.str()}},
                                           rhs.str(), lhs.str()});
                }
        out.push_back(std::move(r));
    }
    { // composition law
        VerificationReport r = fresh("dpow_comp");
        for (const auto& x : dom.xs)
            for (unsigned n = 1; n <= nb; ++n)
                for (unsigned m = 0; m <= nb && m * n <= nb; ++m) {
                    RingElement inner = mdpow(n, x);
                    RingElement lhs = mdpow(m, inner);
                    RingElement rhs = from_int(dp->ring, uniform_bell(m, n)) * mdpow(m * n, x);
                    if (lhs != rhs)
                        note_violation(r, {{{"m", std::to_string(m)},
                                            {"n", std::to_string(n)},
                                            {"x", x.str()}},
                                           rhs.str(), lhs.str()});
                }
        out.push_back(std::move(r));
    }
    return out;
}

bool axioms_pass(const DP& dp, const CheckOptions& opts) {
    for (const auto& r : check_axioms(dp, opts))
        if (!r.passed()) return false;
    return true;
}

ReplayResult replay_axiom_witness(const DP& dp, const std::string& check, const Witness& w) {
    auto num = [&](const char* key) -> unsigned {
        return static_cast<unsigned>(std::stoul(w.input(key)));
    };
    auto elem = [&](const char* key) { return parse_element(dp->ring, w.input(key)); };

    ReplayResult res;
    if (check == "dpow_mem") {
        RingElement v = dpow(dp, num("n"), elem("x"));
        res.expected = "element of " + dp->ideal->key();
        res.actual = v.str();
        res.reproduced = !mem(dp->ideal, v) && res.actual == w.actual;
        return res;
    }
    RingElement zero = ring_zero(dp->ring);
    unsigned n = 0, m = 0;
    RingElement x = zero, y = zero, a = zero;
    for (const auto& [k, v] : w.inputs) {
        if (k == "n") n = static_cast<unsigned>(std::stoul(v));
        else if (k == "m") m = static_cast<unsigned>(std::stoul(v));
        else if (k == "x") x = parse_element(dp->ring, v);
        else if (k == "y") y = parse_element(dp->ring, v);
        else if (k == "a") a = parse_element(dp->ring, v);
    }
    auto [lhs, rhs] = law_sides(dp, check, n, m, x, y, a);
    res.expected = rhs.str();
    res.actual = lhs.str();
    res.reproduced = res.expected == w.expected && res.actual == w.actual && lhs != rhs;
    return res;
}

// ---------------------------------------------------------------------------
// Morphisms

namespace {

std::vector<RingElement> ideal_domain(const Ideal& I, const CheckOptions& opts) {
    if (opts.exhaustive) {
        if (!I->is_enumerable())
            throw std::domain_error("exhaustive check needs an enumerable ideal; use sampled mode");
        return ideal_elements(I);
    }
    std::mt19937_64 rng(opts.seed);
    std::vector<RingElement> out;
    for (unsigned i = 0; i < opts.samples; ++i) out.push_back(sample_ideal_element(I, rng));
    return out;
}

} // namespace

VerificationReport is_dp_morphism(const RingHom& f, const DP& source, const DP& target,
                                  const CheckOptions& opts) {
    if (!same_ring(f->source, source->ring) || !same_ring(f->target, target->ring))
        fail("dp morphism: hom endpoints do not match the structures");
    VerificationReport r;
    r.check = "dp_morphism";
    r.coverage = opts.coverage();
    r.n_bound = opts.n_bound;
    r.params["source"] = source->name;
    r.params["target"] = target->name;

    // f carries I into J: enough to look at generators
    for (const auto& g : source->ideal->generators) {
        RingElement fg = hom_apply(f, g);
        if (!mem(target->ideal, fg))
            note_violation(r, {{{"x", g.str()}, {"f(x)", fg.str()}},
                               "element of " + target->ideal->key(),
                               fg.str()});
    }
    if (!r.passed()) {
        r.params["ideal_comp"] = "Fail";
        return r;
    }
    r.params["ideal_comp"] = "Pass";

    for (const auto& x : ideal_domain(source->ideal, opts))
        for (unsigned n = 0; n <= opts.n_bound; ++n) {
            RingElement lhs = dpow(target, n, hom_apply(f, x));
            RingElement rhs = hom_apply(f, dpow(source, n, x));
            if (lhs != rhs)
                note_violation(r, {{{"n", std::to_string(n)}, {"x", x.str()}},
                                   rhs.str(), lhs.str()});
        }
    return r;
}

std::pair<std::vector<RingElement>, VerificationReport>
dp_equalizer(const RingHom& f, const DP& source, const DP& target, const CheckOptions& opts) {
    if (!source->ring->is_finite())
        throw std::domain_error("equalizer computation needs a finite ring");
    if (!same_ring(f->source, source->ring) || !same_ring(f->target, target->ring))
        fail("equalizer: hom endpoints do not match the structures");

    std::vector<RingElement> eq;
    for (const auto& x : enumerate_elements(source->ring)) {
        bool ok = true;
        for (unsigned n = 0; n <= opts.n_bound && ok; ++n)
            ok = dpow(target, n, hom_apply(f, x)) == hom_apply(f, dpow(source, n, x));
        if (ok) eq.push_back(x);
    }
    std::sort(eq.begin(), eq.end());

    VerificationReport r;
    r.check = "dp_equalizer_ideal";
    r.coverage = Coverage::Exhaustive();
    r.n_bound = opts.n_bound;
    r.params["size"] = std::to_string(eq.size());
    std::set<RingElement> in(eq.begin(), eq.end());
    for (const auto& a : eq) {
        for (const auto& b : eq)
            if (!in.count(a + b))
                note_violation(r, {{{"a", a.str()}, {"b", b.str()}},
                                   "a+b in equalizer", (a + b).str() + " outside"});
        for (const auto& c : enumerate_elements(source->ring))
            if (!in.count(a * c))
                note_violation(r, {{{"a", a.str()}, {"c", c.str()}},
                                   "a*c in equalizer", (a * c).str() + " outside"});
    }
    return {eq, r};
}

VerificationReport dp_morphism_from_generators(const RingHom& f, const DP& source,
                                               const DP& target,
                                               const std::vector<RingElement>& S,
                                               const CheckOptions& opts) {
    if (!ideal_eq(span(source->ring, S), source->ideal))
        fail("generating set does not span the source ideal");

    VerificationReport r;
    r.check = "dp_morphism_from_generators";
    r.coverage = opts.coverage();
    r.n_bound = opts.n_bound;
    r.params["source"] = source->name;
    r.params["target"] = target->name;

    bool hyp = true;
    for (const auto& s : S)
        for (unsigned n = 0; n <= opts.n_bound; ++n) {
            RingElement lhs = dpow(target, n, hom_apply(f, s));
            RingElement rhs = hom_apply(f, dpow(source, n, s));
            if (lhs != rhs) {
                hyp = false;
                note_violation(r, {{{"n", std::to_string(n)}, {"s", s.str()}},
                                   rhs.str(), lhs.str()});
            }
        }
    r.params["hypothesis"] = hyp ? "Pass" : "Fail";
    if (!hyp) {
        // nothing follows from a false hypothesis; flag rather than fail
        r.status = Status::Inconclusive;
        return r;
    }

    VerificationReport full = is_dp_morphism(f, source, target, opts);
    r.params["conclusion"] = status_str(full.status);
    r.status = full.status;
    r.witnesses = full.witnesses;
    return r;
}

VerificationReport dp_unique_on_generators(const DP& dp1, const DP& dp2,
                                           const std::vector<RingElement>& S,
                                           const CheckOptions& opts) {
    if (!same_ring(dp1->ring, dp2->ring) || !ideal_eq(dp1->ideal, dp2->ideal))
        fail("uniqueness check needs two structures on the same ideal");
    if (!ideal_eq(span(dp1->ring, S), dp1->ideal))
        fail("generating set does not span the ideal");

    VerificationReport r;
    r.check = "dp_unique_on_generators";
    r.coverage = opts.coverage();
    r.n_bound = opts.n_bound;
    r.params["left"] = dp1->name;
    r.params["right"] = dp2->name;

    bool hyp = true;
    for (const auto& s : S)
        for (unsigned n = 0; n <= opts.n_bound; ++n) {
            RingElement l = dpow(dp1, n, s), rr = dpow(dp2, n, s);
            if (l != rr) {
                hyp = false;
                note_violation(r, {{{"n", std::to_string(n)}, {"s", s.str()}}, rr.str(), l.str()});
            }
        }
    r.params["hypothesis"] = hyp ? "Pass" : "Fail";
    if (!hyp) {
        r.status = Status::Inconclusive;
        return r;
    }

    for (const auto& x : ideal_domain(dp1->ideal, opts))
        for (unsigned n = 0; n <= opts.n_bound; ++n) {
            RingElement l = dpow(dp1, n, x), rr = dpow(dp2, n, x);
            if (l != rr)
                note_violation(r, {{{"n", std::to_string(n)}, {"x", x.str()}}, rr.str(), l.str()});
        }
    return r;
}

// ---------------------------------------------------------------------------
// Sub-dp-ideals

VerificationReport is_sub_dp_ideal(const DP& dp, const Ideal& J, const CheckOptions& opts) {
    if (!same_ring(dp->ring, J->ring)) fail("sub-dp query from a different ring");
    VerificationReport r;
    r.check = "sub_dp_ideal";
    r.coverage = opts.coverage();
    r.n_bound = opts.n_bound;
    r.params["ideal"] = dp->ideal->key();
    r.params["sub"] = J->key();

    if (!ideal_subset(J, dp->ideal)) {
        for (const auto& g : J->generators)
            if (!mem(dp->ideal, g))
                note_violation(r, {{{"x", g.str()}}, "element of " + dp->ideal->key(), g.str()});
        return r;
    }
    for (const auto& x : ideal_domain(J, opts))
        for (unsigned n = 1; n <= opts.n_bound; ++n) {
            RingElement v = dpow(dp, n, x);
            if (!mem(J, v))
                note_violation(r, {{{"n", std::to_string(n)}, {"x", x.str()}},
                                   "element of " + J->key(), v.str()});
        }
    return r;
}

bool sub_dp(const DP& dp, const Ideal& J, const CheckOptions& opts) {
    return is_sub_dp_ideal(dp, J, opts).passed();
}

DP restrict_dp(const DP& dp, const Ideal& J, const CheckOptions& opts) {
    VerificationReport pre = is_sub_dp_ideal(dp, J, opts);
    if (!pre.passed())
        fail("restriction target is not a sub-dp-ideal: " + witness_text(pre.witnesses.at(0)));
    DP base = dp;
    auto d = raw_dp(dp->ring, J, DPRule::Restricted, dp->name + "|" + J->key(),
                    [base](unsigned n, const RingElement& x) { return dpow(base, n, x); },
                    dp->n_max);
    d->left = dp;
    return d;
}

VerificationReport inter_sub_dp_iff(const DP& dp, const Ideal& J, const CheckOptions& opts) {
    VerificationReport r;
    r.check = "inter_sub_dp_iff";
    r.coverage = opts.coverage();
    r.n_bound = opts.n_bound;
    r.params["sub"] = J->key();

    Ideal JI = ideal_inf(J, dp->ideal);
    bool side_a = is_sub_dp_ideal(dp, JI, opts).passed();

    bool side_b = true;
    Witness first_b;
    auto check_pair = [&](const RingElement& x, const RingElement& d) {
        RingElement y = x - d; // x - y = d lies in J, both x and y in I
        for (unsigned n = 1; n <= opts.n_bound; ++n) {
            RingElement diff = dpow(dp, n, x) - dpow(dp, n, y);
            if (!mem(J, diff)) {
                if (side_b)
                    first_b = {{{"n", std::to_string(n)}, {"x", x.str()}, {"y", y.str()}},
                               "difference in " + J->key(), diff.str()};
                side_b = false;
                return;
            }
        }
    };
    if (opts.exhaustive) {
        for (const auto& x : ideal_domain(dp->ideal, opts))
            for (const auto& d : ideal_elements(JI)) check_pair(x, d);
    } else {
        std::mt19937_64 rng(opts.seed + 1);
        for (unsigned i = 0; i < opts.samples; ++i)
            check_pair(sample_ideal_element(dp->ideal, rng), sample_ideal_element(JI, rng));
    }

    r.params["containment_side"] = side_a ? "true" : "false";
    r.params["congruence_side"] = side_b ? "true" : "false";
    if (side_a != side_b) {
        Witness w = side_b ? Witness{{{"side", "containment"}}, "both sides equal", "mismatch"}
                           : first_b;
        note_violation(r, std::move(w));
    }
    return r;
}

VerificationReport span_sub_dp_iff(const DP& dp, const std::vector<RingElement>& S,
                                   const CheckOptions& opts) {
    VerificationReport r;
    r.check = "span_sub_dp_iff";
    r.coverage = opts.coverage();
    r.n_bound = opts.n_bound;
    for (const auto& s : S)
        if (!mem(dp->ideal, s)) fail("span_sub_dp_iff: generator outside the ideal");
    Ideal K = span(dp->ring, S);
    r.params["span"] = K->key();

    bool side_a = is_sub_dp_ideal(dp, K, opts).passed();
    bool side_b = true;
    Witness first_b;
    for (const auto& s : S)
        for (unsigned n = 1; n <= opts.n_bound; ++n) {
            RingElement v = dpow(dp, n, s);
            if (!mem(K, v)) {
                if (side_b)
                    first_b = {{{"n", std::to_string(n)}, {"s", s.str()}},
                               "element of " + K->key(), v.str()};
                side_b = false;
            }
        }
    r.params["ideal_side"] = side_a ? "true" : "false";
    r.params["generator_side"] = side_b ? "true" : "false";
    if (side_a != side_b)
        note_violation(r, side_b ? Witness{{{"side", "ideal"}}, "both sides equal", "mismatch"}
                                 : first_b);
    return r;
}

VerificationReport mul_sub_dp(const DP& dp, const Ideal& J, const CheckOptions& opts) {
    Ideal K = ideal_mul(dp->ideal, J);
    VerificationReport r = is_sub_dp_ideal(dp, K, opts);
    r.check = "mul_sub_dp";
    r.params["factor"] = J->key();
    r.params["product"] = K->key();
    return r;
}

// ---------------------------------------------------------------------------
// Lattice

bool SubDPLattice::contains(const Ideal& J) const {
    for (const auto& K : all)
        if (ideal_eq(K, J)) return true;
    return false;
}

namespace {

Ideal find_member(const SubDPLattice& L, const Ideal& J, const char* op) {
    for (const auto& K : L.all)
        if (ideal_eq(K, J)) return K;
    throw std::logic_error(std::string(op) + " left the sub-dp-ideal lattice: " + J->key());
}

} // namespace

Ideal SubDPLattice::sup(const Ideal& a, const Ideal& b) const {
    return find_member(*this, ideal_sum(a, b), "sup");
}

Ideal SubDPLattice::inf(const Ideal& a, const Ideal& b) const {
    return find_member(*this, ideal_inf(a, b), "inf");
}

Ideal SubDPLattice::Inf(const std::vector<Ideal>& s) const {
    // the empty infimum is the top of *this* lattice: I itself, not (1)
    Ideal acc = top;
    for (const auto& J : s) acc = ideal_inf(acc, J);
    return find_member(*this, acc, "Inf");
}

Ideal SubDPLattice::span_filter(const std::vector<RingElement>& S) const {
    Ideal acc = top;
    for (const auto& J : all) {
        bool covers = true;
        for (const auto& s : S)
            if (!mem(J, s)) { covers = false; break; }
        if (covers) acc = ideal_inf(acc, J);
    }
    return find_member(*this, acc, "span_filter");
}

Ideal SubDPLattice::span_gamma(const std::vector<RingElement>& S) const {
    std::vector<RingElement> gens;
    for (const auto& s : S)
        for (unsigned n = 1; n <= n_bound; ++n) gens.push_back(dpow(dp, n, s));
    return find_member(*this, span(dp->ring, gens), "span_gamma");
}

SubDPLattice sub_dp_lattice(const DP& dp, const CheckOptions& opts) {
    if (!dp->ring->is_finite()) throw std::domain_error("sub-dp lattice needs a finite ring");
    auto candidates = enumerate_ideals(dp->ring, 2);
    if (!ideal_enumeration_complete(dp->ring, candidates))
        throw std::logic_error("ideal enumeration incomplete; lattice would be untrustworthy");

    SubDPLattice L;
    L.dp = dp;
    L.n_bound = opts.n_bound;
    for (const auto& J : candidates)
        if (sub_dp(dp, J, opts)) L.all.push_back(J);
    L.bot = find_member(L, zero_ideal(dp->ring), "bottom");
    L.top = find_member(L, dp->ideal, "top");
    return L;
}

// ---------------------------------------------------------------------------
// Quotients

namespace {

std::map<RingElement, RingElement> fiber_map(const DP& dp, const RingHom& f, const Ideal& Jq,
                                             bool greatest) {
    std::map<RingElement, RingElement> pre;
    for (const auto& x : ideal_elements(dp->ideal)) {
        RingElement y = hom_apply(f, x);
        auto it = pre.find(y);
        if (it == pre.end()) pre.emplace(y, x);
        else if (greatest ? it->second < x : x < it->second) it->second = x;
    }
    for (const auto& y : ideal_elements(Jq))
        if (!pre.count(y))
            throw std::logic_error("image ideal element without a preimage in the source ideal: " +
                                   y.str());
    return pre;
}

DP quotient_from_fibers(const DP& dp, const RingHom& f, const Ideal& Jq, bool greatest,
                        const std::string& name) {
    auto pre = std::make_shared<std::map<RingElement, RingElement>>(fiber_map(dp, f, Jq, greatest));
    DP base = dp;
    RingHom hom = f;
    auto d = raw_dp(f->target, Jq, DPRule::Quotient, name,
                    [base, hom, pre](unsigned n, const RingElement& y) {
                        return hom_apply(hom, dpow(base, n, pre->at(y)));
                    },
                    dp->n_max);
    d->left = dp;
    d->along = f;
    return d;
}

} // namespace

DP quotient_dp(const DP& dp, const RingHom& f, const CheckOptions& opts) {
    if (!same_ring(f->source, dp->ring)) fail("quotient along a hom from a different ring");
    if (!hom_surjective(f)) fail("quotient construction needs a surjective hom");

    Ideal K = ideal_inf(hom_kernel(f), dp->ideal);
    VerificationReport hyp = is_sub_dp_ideal(dp, K, opts);
    if (!hyp.passed())
        fail("kernel-meets-ideal is not a sub-dp-ideal: " + witness_text(hyp.witnesses.at(0)));

    Ideal Jq = hom_image_ideal(f, dp->ideal);
    std::string name = "quotient(" + dp->name + ")";
    if (hom_is_identity_like(f)) {
        DP base = dp;
        RingHom hom = f;
        auto d = raw_dp(f->target, Jq, DPRule::Quotient, name,
                        [base, hom](unsigned n, const RingElement& y) {
                            return hom_apply(hom, dpow(base, n, y));
                        },
                        dp->n_max);
        d->left = dp;
        d->along = f;
        return d;
    }
    if (!dp->ideal->is_enumerable())
        throw std::domain_error("quotient along a non-identity hom needs an enumerable ideal");
    return quotient_from_fibers(dp, f, Jq, /*greatest=*/false, name);
}

std::vector<VerificationReport> quotient_audit(const DP& dp, const RingHom& f, const DP& qdp,
                                               const CheckOptions& opts) {
    std::vector<VerificationReport> out;

    {
        Ideal K = ideal_inf(hom_kernel(f), dp->ideal);
        VerificationReport r = is_sub_dp_ideal(dp, K, opts);
        r.check = "quotient_hypothesis";
        out.push_back(std::move(r));
    }
    {
        VerificationReport r;
        r.check = "quotient_well_defined";
        r.coverage = opts.coverage();
        r.n_bound = opts.n_bound;
        std::map<RingElement, std::vector<RingElement>> fibers;
        for (const auto& x : ideal_domain(dp->ideal, opts))
            fibers[hom_apply(f, x)].push_back(x);
        for (const auto& [y, xs] : fibers) {
            const RingElement& a = xs.front();
            for (const auto& b : xs)
                for (unsigned n = 0; n <= opts.n_bound; ++n) {
                    RingElement lhs = hom_apply(f, dpow(dp, n, a));
                    RingElement rhs = hom_apply(f, dpow(dp, n, b));
                    if (lhs != rhs)
                        note_violation(r, {{{"n", std::to_string(n)},
                                            {"a", a.str()},
                                            {"b", b.str()}},
                                           lhs.str(), rhs.str()});
                }
        }
        out.push_back(std::move(r));
    }
    {
        VerificationReport r = is_dp_morphism(f, dp, qdp, opts);
        r.check = "quotient_projection_morphism";
        out.push_back(std::move(r));
    }
    {
        // uniqueness, realized pointwise: an alternative canonical choice of
        // preimages (greatest instead of least) must induce the same values
        VerificationReport r;
        r.check = "quotient_unique";
        r.coverage = opts.coverage();
        r.n_bound = opts.n_bound;
        if (hom_is_identity_like(f)) {
            for (const auto& y : ideal_domain(qdp->ideal, opts))
                for (unsigned n = 0; n <= opts.n_bound; ++n)
                    if (dpow(qdp, n, y) != hom_apply(f, dpow(dp, n, y)))
                        note_violation(r, {{{"n", std::to_string(n)}, {"y", y.str()}},
                                           hom_apply(f, dpow(dp, n, y)).str(),
                                           dpow(qdp, n, y).str()});
        } else {
            DP alt = quotient_from_fibers(dp, f, qdp->ideal, /*greatest=*/true,
                                          qdp->name + "#alt");
            for (const auto& y : ideal_elements(qdp->ideal))
                for (unsigned n = 0; n <= opts.n_bound; ++n) {
                    RingElement a = dpow(qdp, n, y), b = dpow(alt, n, y);
                    if (a != b)
                        note_violation(r, {{{"n", std::to_string(n)}, {"y", y.str()}},
                                           b.str(), a.str()});
                }
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace dpv
