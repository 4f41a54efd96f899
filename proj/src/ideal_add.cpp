#include "dpv/constructions.hpp"
#include "dpv/exponential.hpp"

namespace dpv {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string witness_line(const Witness& w) {
    std::string s;
    for (const auto& [k, v] : w.inputs) s += k + "=" + v + " ";
    return s + "expected " + w.expected + ", got " + w.actual;
}

struct SumParts {
    std::vector<RingElement> xs, ys; // elements of the two ideals
};

// Entry gate shared by both routes: same ring, agreement on the overlap,
// enumerable ideals.  The overlap hypothesis is the construction's defining
// precondition, so a failure is a refusal, not a report.
SumParts sum_gate(const DP& left, const DP& right, const CheckOptions& opts,
                  const std::string& who) {
    if (!same_ring(left->ring, right->ring)) fail(who + ": structures on different rings");
    VerificationReport compat = check_ideal_add_compatible(left, right, opts);
    if (!compat.passed()) {
        std::string msg = who + ": the structures disagree on the overlap of their ideals";
        if (!compat.witnesses.empty()) msg += ": " + witness_line(compat.witnesses[0]);
        fail(msg);
    }
    if (!left->ideal->is_enumerable() || !right->ideal->is_enumerable())
        throw std::domain_error(who + ": needs enumerable ideals");
    return {ideal_elements(left->ideal), ideal_elements(right->ideal)};
}

using Key = std::pair<unsigned, std::string>;

// Assemble the structure from a finished value table.  Degree 0 is hardwired
// to 1; everything else must be present.  Spot checks mirror make_dp.
DP from_sum_table(const DP& left, const DP& right, const Ideal& sum,
                  std::map<Key, RingElement> table, unsigned cap, std::string name) {
    auto shared = std::make_shared<std::map<Key, RingElement>>(std::move(table));
    auto d = std::make_shared<DividedPowers>();
    d->ring = left->ring;
    d->ideal = sum;
    d->rule = DPRule::IdealAdd;
    d->name = std::move(name);
    d->n_max = cap;
    d->left = left;
    d->right = right;
    d->eval = [shared, one = ring_one(d->ring), label = d->name](unsigned n,
                                                                 const RingElement& z) {
        if (n == 0) return one;
        auto it = shared->find({n, z.str()});
        if (it == shared->end())
            throw std::logic_error(label + ": missing value at n=" + std::to_string(n) +
                                   ", z=" + z.str());
        return it->second;
    };
    for (const auto& g : d->ideal->generators) {
        if (!dpow(d, 0, g).is_one())
            throw std::logic_error(d->name + ": dpow(0, " + g.str() + ") != 1");
        if (dpow(d, 1, g) != g)
            throw std::logic_error(d->name + ": dpow(1, " + g.str() + ") != identity");
    }
    return d;
}

} // namespace

DP ideal_add_dp_v1(const DP& left, const DP& right, const CheckOptions& opts) {
    SumParts parts = sum_gate(left, right, opts, "ideal_add_dp_v1");
    const Ring& R = left->ring;
    unsigned cap = 2 * opts.n_bound;

    // gamma_n(x + y) as the convolution of the two families
    auto conv = [&](unsigned n, const RingElement& x, const RingElement& y) {
        RingElement acc = ring_zero(R);
        for (unsigned k = 0; k <= n; ++k)
            acc = acc + dpow(left, k, x) * dpow(right, n - k, y);
        return acc;
    };

    // The first decomposition of each sum defines the value; every other
    // decomposition is audited against it.  A conflict means the rule does
    // not descend to the sum ideal, which no report can repair.
    std::map<Key, RingElement> table;
    std::map<std::string, std::pair<RingElement, RingElement>> first_seen;
    for (const auto& x : parts.xs)
        for (const auto& y : parts.ys) {
            RingElement z = x + y;
            std::string zs = z.str();
            auto it = first_seen.find(zs);
            if (it == first_seen.end()) {
                first_seen.emplace(zs, std::make_pair(x, y));
                for (unsigned n = 1; n <= cap; ++n) table[{n, zs}] = conv(n, x, y);
            } else {
                for (unsigned n = 1; n <= cap; ++n) {
                    RingElement again = conv(n, x, y);
                    const RingElement& stored = table.at({n, zs});
                    if (again != stored)
                        fail("ideal_add_dp_v1: value at " + zs +
                             " depends on the decomposition: gamma_" + std::to_string(n) +
                             " from (" + it->second.first.str() + ", " +
                             it->second.second.str() + ") = " + stored.str() + ", from (" +
                             x.str() + ", " + y.str() + ") = " + again.str());
                }
            }
        }
    return from_sum_table(left, right, ideal_sum(left->ideal, right->ideal), std::move(table),
                          cap, "ideal_add_v1(" + left->name + "," + right->name + ")");
}

DP ideal_add_dp(const DP& left, const DP& right, const CheckOptions& opts) {
    sum_gate(left, right, opts, "ideal_add_dp");
    unsigned cap = 2 * opts.n_bound;

    // Glue the two exponential maps over the sum; the coefficients of the
    // glued series are the divided powers.
    auto f = [&](const RingElement& a) { return dp_exp(left, a, cap); };
    auto g = [&](const RingElement& a) { return dp_exp(right, a, cap); };
    SupExtension ext = linear_on_sup(left->ideal, right->ideal, f, g);
    if (!ext.report.passed()) {
        std::string msg = "ideal_add_dp: the glued exponential is not well defined";
        if (!ext.report.witnesses.empty())
            msg += " (decomposition conflict: " + witness_line(ext.report.witnesses[0]) + ")";
        fail(msg);
    }

    std::map<Key, RingElement> table;
    for (const auto& [z, h] : ext.value)
        for (unsigned n = 1; n <= cap; ++n) table[{n, z.str()}] = coeff(h.series, {n});
    return from_sum_table(left, right, ext.sum, std::move(table), cap,
                          "ideal_add(" + left->name + "," + right->name + ")");
}

VerificationReport ideal_add_uniqueness(const DP& left, const DP& right, const DP& candidate,
                                        const CheckOptions& opts) {
    DP reference = ideal_add_dp(left, right, opts);
    // Generating set: every element of the two summands.  Agreement there is
    // precisely "the candidate restricts to the given structures".
    std::vector<RingElement> S = ideal_elements(left->ideal);
    for (const auto& y : ideal_elements(right->ideal)) S.push_back(y);
    VerificationReport r = dp_unique_on_generators(reference, candidate, S, opts);
    r.params["construction"] = reference->name;
    return r;
}

} // namespace dpv
