#include "dpv/exponential.hpp"

#include "dpv/combinat.hpp"

namespace dpv {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

RingElement coeff_at(const Series& f, unsigned n) { return coeff(f, ExpVec{n}); }

} // namespace

ExpCertificate is_exponential(const Series& f) {
    ExpCertificate c;
    if (f.vars.size() != 1) fail("exponential certificate is for univariate series");
    if (!coeff_at(f, 0).is_one()) {
        c.detail = "constant term " + coeff_at(f, 0).str() + " instead of 1";
        return c;
    }
    for (unsigned i = 1; i <= f.cap; ++i)
        for (unsigned j = i; i + j <= f.cap; ++j) {
            RingElement lhs = from_int(f.ring, choose(i + j, i)) * coeff_at(f, i + j);
            RingElement rhs = coeff_at(f, i) * coeff_at(f, j);
            if (lhs != rhs) {
                c.fail_i = i;
                c.fail_j = j;
                c.detail = "C(" + std::to_string(i + j) + "," + std::to_string(i) + ")*a_" +
                           std::to_string(i + j) + " = " + lhs.str() + " but a_" +
                           std::to_string(i) + "*a_" + std::to_string(j) + " = " + rhs.str();
                return c;
            }
        }
    c.ok = true;
    return c;
}

ExpCertificate is_exponential_subst_route(const Series& f) {
    ExpCertificate c;
    if (f.vars.size() != 1) fail("exponential certificate is for univariate series");
    if (!coeff_at(f, 0).is_one()) {
        c.detail = "constant term " + coeff_at(f, 0).str() + " instead of 1";
        return c;
    }
    const Ring& R = f.ring;
    std::vector<std::string> two = {"X0", "X1"};
    // f(X0 + X1) via substitution; the constant term of X0 + X1 is zero
    Series x0px1 = series_add(series_var(R, two, f.cap, 0), series_var(R, two, f.cap, 1));
    SubstPoint b = has_subst({x0px1});
    Series lhs = subst(f, b);
    // f(X0) * f(X1) by re-homing the exponents directly
    Series fx0 = series_zero(R, two, f.cap), fx1 = series_zero(R, two, f.cap);
    for (const auto& [m, v] : f.coeffs) {
        fx0 = series_add(fx0, series_monomial(R, two, f.cap, {m[0], 0}, v));
        fx1 = series_add(fx1, series_monomial(R, two, f.cap, {0, m[0]}, v));
    }
    Series rhs = series_mul(fx0, fx1);
    Series diff = series_sub(lhs, rhs);
    if (!diff.is_zero()) {
        const auto& [m, v] = *diff.coeffs.begin();
        c.fail_i = m[0];
        c.fail_j = m[1];
        c.detail = "coefficient at X0^" + std::to_string(m[0]) + " X1^" + std::to_string(m[1]) +
                   " differs by " + v.str();
        return c;
    }
    c.ok = true;
    return c;
}

ExponentialElement make_exponential(Series f) {
    ExpCertificate c = is_exponential(f);
    if (!c.ok)
        fail("series is not of exponential type at (" + std::to_string(c.fail_i) + "," +
             std::to_string(c.fail_j) + "): " + c.detail);
    return {std::move(f)};
}

ExponentialElement exp_one(const Ring& R, unsigned cap) {
    return {series_one(R, {"X"}, cap)};
}

bool exp_eq(const ExponentialElement& f, const ExponentialElement& g) {
    return series_eq(f.series, g.series);
}

namespace {

ExponentialElement recertified(Series s, const char* op) {
    ExpCertificate c = is_exponential(s);
    if (!c.ok)
        throw std::logic_error(std::string(op) + " left the exponential module at (" +
                               std::to_string(c.fail_i) + "," + std::to_string(c.fail_j) +
                               "): " + c.detail);
    return {std::move(s)};
}

} // namespace

ExponentialElement exp_add(const ExponentialElement& f, const ExponentialElement& g) {
    return recertified(series_mul(f.series, g.series), "exp_add");
}

ExponentialElement exp_smul(const RingElement& a, const ExponentialElement& f) {
    return recertified(rescale(a, f.series), "exp_smul");
}

ExponentialElement exp_neg(const ExponentialElement& f) {
    return exp_smul(from_int(f.series.ring, -1), f);
}

ExponentialElement dp_exp(const DP& dp, const RingElement& a, unsigned cap) {
    if (!mem(dp->ideal, a))
        fail("dp_exp: " + a.str() + " is outside the ideal " + dp->ideal->key());
    std::vector<std::pair<ExpVec, RingElement>> terms;
    for (unsigned n = 0; n <= cap; ++n) terms.push_back({ExpVec{n}, dpow(dp, n, a)});
    Series s = series_from_terms(dp->ring, {"X"}, cap, terms);
    ExpCertificate c = is_exponential(s);
    if (!c.ok)
        throw std::logic_error("dp_exp(" + a.str() + ") is not exponential at (" +
                               std::to_string(c.fail_i) + "," + std::to_string(c.fail_j) +
                               "): " + c.detail + " [structure " + dp->name + "]");
    return {std::move(s)};
}

VerificationReport dp_exp_linear(const DP& dp, unsigned cap, const CheckOptions& opts) {
    VerificationReport r;
    r.check = "dp_exp_linear";
    r.coverage = opts.coverage();
    r.n_bound = cap;
    r.params["structure"] = dp->name;

    std::vector<RingElement> xs, ys, cs;
    if (opts.exhaustive) {
        if (!dp->ideal->is_enumerable() || !dp->ring->is_finite())
            throw std::domain_error("exhaustive linearity check needs a finite ring");
        xs = ideal_elements(dp->ideal);
        ys = xs;
        cs = enumerate_elements(dp->ring);
    } else {
        std::mt19937_64 rng(opts.seed);
        for (unsigned i = 0; i < opts.samples; ++i) {
            xs.push_back(sample_ideal_element(dp->ideal, rng));
            ys.push_back(sample_ideal_element(dp->ideal, rng));
            cs.push_back(sample_element(dp->ring, rng));
        }
    }

    auto note = [&r](Witness w) {
        if (r.witnesses.size() < 5) r.record_failure(std::move(w));
        else r.status = Status::Fail;
    };
    auto additive = [&](const RingElement& a, const RingElement& b) {
        Series lhs = dp_exp(dp, a + b, cap).series;
        Series rhs = series_mul(dp_exp(dp, a, cap).series, dp_exp(dp, b, cap).series);
        if (!series_eq(lhs, rhs))
            note({{{"a", a.str()}, {"b", b.str()}}, rhs.str(), lhs.str()});
    };
    auto scaling = [&](const RingElement& c, const RingElement& a) {
        Series lhs = dp_exp(dp, c * a, cap).series;
        Series rhs = rescale(c, dp_exp(dp, a, cap).series);
        if (!series_eq(lhs, rhs))
            note({{{"c", c.str()}, {"a", a.str()}}, rhs.str(), lhs.str()});
    };
    if (opts.exhaustive) {
        for (const auto& a : xs)
            for (const auto& b : ys) additive(a, b);
        for (const auto& c : cs)
            for (const auto& a : xs) scaling(c, a);
    } else {
        for (size_t i = 0; i < xs.size(); ++i) {
            additive(xs[i], ys[i]);
            scaling(cs[i], xs[i]);
        }
    }
    return r;
}

SupExtension linear_on_sup(const Ideal& M, const Ideal& N,
                           const std::function<ExponentialElement(const RingElement&)>& f,
                           const std::function<ExponentialElement(const RingElement&)>& g) {
    if (!same_ring(M->ring, N->ring)) fail("sup extension: ideals from different rings");
    SupExtension ext;
    ext.sum = ideal_sum(M, N);
    if (!ext.sum->is_enumerable() || !M->is_enumerable() || !N->is_enumerable())
        throw std::domain_error("sup extension needs enumerable ideals");

    VerificationReport& r = ext.report;
    r.check = "linear_on_sup";
    r.coverage = Coverage::Exhaustive();

    // hypothesis: f and g agree where both are defined
    for (const auto& z : ideal_elements(ideal_inf(M, N)))
        if (!exp_eq(f(z), g(z))) {
            r.record_failure({{{"z", z.str()}}, f(z).series.str(), g(z).series.str()});
            r.params["hypothesis"] = "Fail";
            return ext;
        }
    r.params["hypothesis"] = "Pass";

    // h(x + y) = f(x) + g(y), every decomposition in agreement
    for (const auto& x : ideal_elements(M))
        for (const auto& y : ideal_elements(N)) {
            RingElement z = x + y;
            ExponentialElement v = exp_add(f(x), g(y));
            auto it = ext.value.find(z);
            if (it == ext.value.end()) {
                ext.value.emplace(z, v);
            } else if (!exp_eq(it->second, v)) {
                r.record_failure({{{"z", z.str()}, {"x", x.str()}, {"y", y.str()}},
                                  it->second.series.str(), v.series.str()});
            }
        }
    if (!r.passed()) return ext;

    // the result extends both maps and is additive on the sum
    for (const auto& x : ideal_elements(M))
        if (!exp_eq(ext.value.at(x), f(x)))
            r.record_failure({{{"x", x.str()}}, f(x).series.str(), ext.value.at(x).series.str()});
    for (const auto& y : ideal_elements(N))
        if (!exp_eq(ext.value.at(y), g(y)))
            r.record_failure({{{"y", y.str()}}, g(y).series.str(), ext.value.at(y).series.str()});
    auto elems = ideal_elements(ext.sum);
    for (const auto& a : elems)
        for (const auto& b : elems) {
            ExponentialElement lhs = ext.value.at(a + b);
            ExponentialElement rhs = exp_add(ext.value.at(a), ext.value.at(b));
            if (!exp_eq(lhs, rhs))
                r.record_failure({{{"a", a.str()}, {"b", b.str()}},
                                  rhs.series.str(), lhs.series.str()});
        }
    return ext;
}

} // namespace dpv
