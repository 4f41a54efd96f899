#include <doctest.h>

#include <random>

#include "dpv/constructions.hpp"
#include "dpv/exponential.hpp"
#include "dpv/numeric.hpp"

using namespace dpv;

namespace {

RingElement el(const Ring& R, const std::string& s) { return parse_element(R, s); }

template <class E, class F>
bool throws_containing(F&& f, const std::string& needle) {
    try {
        f();
    } catch (const E& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    } catch (...) {
        return false;
    }
    return false;
}

// sum_n X^n / n! over the rationals, the model citizen of the module.
Series classical_exp(unsigned cap) {
    Ring Q = ring_rationals();
    std::vector<std::pair<ExpVec, RingElement>> terms;
    RingElement fact = ring_one(Q);
    terms.push_back({ExpVec{0}, ring_one(Q)});
    for (unsigned n = 1; n <= cap; ++n) {
        fact = fact * from_int(Q, n);
        terms.push_back({ExpVec{n}, ring_inverse(fact)});
    }
    return series_from_terms(Q, {"X"}, cap, terms);
}

} // namespace

TEST_SUITE("exponential") {

TEST_CASE("the classical exponential series carries a certificate at cap 16") {
    Series e = classical_exp(16);
    ExpCertificate c = is_exponential(e);
    CHECK(c.ok);
    ExpCertificate c2 = is_exponential_subst_route(e);
    CHECK(c2.ok);
    ExponentialElement f = make_exponential(e);
    CHECK(exp_eq(f, f));
}

TEST_CASE("1 + X is refused with the failing pair (1,1) on both routes") {
    Ring Q = ring_rationals();
    Series s = parse_series(Q, "X", 6, "1 + X");
    ExpCertificate binom = is_exponential(s);
    CHECK(!binom.ok);
    CHECK(binom.fail_i == 1);
    CHECK(binom.fail_j == 1);
    CHECK(!binom.detail.empty());
    ExpCertificate route = is_exponential_subst_route(s);
    CHECK(!route.ok);
    CHECK(route.fail_i == 1);
    CHECK(route.fail_j == 1);
    CHECK(throws_containing<std::invalid_argument>(
        [&] { make_exponential(s); }, "(1,1)"));
    // Wrong constant term is refused before any pair is consulted.
    ExpCertificate c0 = is_exponential(parse_series(Q, "X", 6, "2 + X"));
    CHECK(!c0.ok);
    CHECK(c0.detail.find("constant term") != std::string::npos);
    CHECK(throws_containing<std::invalid_argument>(
        [&] { is_exponential(series_one(Q, {"X", "Y"}, 4)); }, "univariate"));
}

TEST_CASE("the binomial route and the substitution route agree everywhere tested") {
    std::mt19937_64 rng(41);
    for (const Ring& R : {ring_rationals(), ring_integers_mod(9)}) {
        for (int trial = 0; trial < 20; ++trial) {
            // constant term pinned to 1, everything above random
            std::vector<std::pair<ExpVec, RingElement>> terms{{ExpVec{0}, ring_one(R)}};
            for (unsigned n = 1; n <= 6; ++n) {
                RingElement c = sample_element(R, rng);
                if (!c.is_zero()) terms.push_back({ExpVec{n}, c});
            }
            Series s = series_from_terms(R, {"X"}, 6, terms);
            CHECK(is_exponential(s).ok == is_exponential_subst_route(s).ok);
        }
    }
    // and on certified members coming out of the structures
    Ring R16 = ring_integers_mod(16);
    DP dp = dp_square_zero(span(R16, {el(R16, "4")}));
    for (const char* a : {"0", "4", "8", "12"}) {
        Series s = dp_exp(dp, el(R16, a), 6).series;
        CHECK(is_exponential(s).ok);
        CHECK(is_exponential_subst_route(s).ok);
    }
}

TEST_CASE("series of divided powers are exponential for every shipped structure") {
    unsigned cap = 6;
    {
        Ring R = ring_integers_mod(4);
        DP dp = dp_square_zero(span(R, {el(R, "2")}));
        for (const char* a : {"0", "2"}) CHECK(is_exponential(dp_exp(dp, el(R, a), cap).series).ok);
    }
    {
        Ring R = ring_integers_mod(9);
        DP dp = dp_prime_nilpotent(span(R, {el(R, "3")}), 3);
        for (const char* a : {"0", "3", "6"})
            CHECK(is_exponential(dp_exp(dp, el(R, a), cap).series).ok);
    }
    {
        DP dp = dp_padic(2, 6);
        Ring R = dp->ring;
        for (const char* a : {"0", "2", "6", "34"})
            CHECK(is_exponential(dp_exp(dp, el(R, a), cap).series).ok);
    }
    {
        Ring R = ring_monomial_quotient(ring_integers_mod(3), {"x"}, {3});
        DP dp = dp_char_p(span(R, {el(R, "x")}));
        for (const char* a : {"0", "x", "2*x", "x^2"})
            CHECK(is_exponential(dp_exp(dp, el(R, a), cap).series).ok);
    }
    {
        DP dp = dp_rat_algebra(whole_ideal(ring_rationals()));
        Ring Q = dp->ring;
        for (const char* a : {"0", "1", "-2", "1/3"})
            CHECK(is_exponential(dp_exp(dp, el(Q, a), 10).series).ok);
    }
}

TEST_CASE("divided powers of 1 over the rationals give the classical series") {
    Ring Q = ring_rationals();
    DP dp = dp_rat_algebra(whole_ideal(Q));
    ExponentialElement f = dp_exp(dp, ring_one(Q), 12);
    CHECK(series_eq(f.series, classical_exp(12)));
    // and at a = 2 the coefficients are 2^n / n!
    ExponentialElement g = dp_exp(dp, el(Q, "2"), 12);
    CHECK(series_eq(g.series, rescale(el(Q, "2"), classical_exp(12))));
}

TEST_CASE("a square-zero structure exponentiates to 1 + aX") {
    Ring R = ring_integers_mod(4);
    DP dp = dp_square_zero(span(R, {el(R, "2")}));
    ExponentialElement f = dp_exp(dp, el(R, "2"), 5);
    CHECK(series_eq(f.series, parse_series(R, "X", 5, "1 + 2*X")));
    CHECK(exp_eq(dp_exp(dp, ring_zero(R), 5), exp_one(R, 5)));
    CHECK(throws_containing<std::invalid_argument>(
        [&] { dp_exp(dp, el(R, "1"), 5); }, "outside the ideal"));
}

TEST_CASE("a corrupted divided-power table is caught at the exponential gate") {
    Ring R = ring_integers_mod(16);
    DP honest = dp_square_zero(span(R, {el(R, "4")}));
    // gamma_2(4) = 2 breaks C(2,1) a_2 = a_1^2 (2*2 = 4 vs 16 = 0).
    DP bad = corrupt_table(tabulate(honest, 8), 8, 2, el(R, "4"), el(R, "2"));
    CHECK(throws_containing<std::logic_error>(
        [&] { dp_exp(bad, el(R, "4"), 6); }, "not exponential"));
}

TEST_CASE("group laws hold on every generated member, exhaustively") {
    unsigned cap = 6;
    auto drill = [&](const DP& dp) {
        Ring R = dp->ring;
        std::vector<ExponentialElement> members;
        for (const auto& a : ideal_elements(dp->ideal)) members.push_back(dp_exp(dp, a, cap));
        ExponentialElement one = exp_one(R, cap);
        for (const auto& f : members) {
            CHECK(exp_eq(exp_add(f, one), f));
            CHECK(exp_eq(exp_add(f, exp_neg(f)), one));
            for (const auto& g : members) {
                CHECK(exp_eq(exp_add(f, g), exp_add(g, f)));
                for (const auto& h : members)
                    CHECK(exp_eq(exp_add(exp_add(f, g), h), exp_add(f, exp_add(g, h))));
            }
        }
    };
    Ring R16 = ring_integers_mod(16);
    drill(dp_square_zero(span(R16, {el(R16, "4")})));
    drill(dp_padic(2, 4)); // nonzero higher coefficients exercise the cross terms
}

TEST_CASE("scalar action: distributivity in both slots and composition") {
    unsigned cap = 6;
    Ring R = ring_integers_mod(16);
    DP dp = dp_square_zero(span(R, {el(R, "4")}));
    std::vector<ExponentialElement> members;
    for (const auto& a : ideal_elements(dp->ideal)) members.push_back(dp_exp(dp, a, cap));
    std::vector<RingElement> scalars = enumerate_elements(R);
    for (const auto& f : members) {
        CHECK(exp_eq(exp_smul(ring_one(R), f), f));
        CHECK(exp_eq(exp_smul(ring_zero(R), f), exp_one(R, cap)));
        for (const auto& c : scalars) {
            for (const auto& d : scalars) {
                CHECK(exp_eq(exp_smul(c, exp_smul(d, f)), exp_smul(c * d, f)));
                // (c + d) . f = c.f + d.f is the functional equation in disguise
                CHECK(exp_eq(exp_smul(c + d, f), exp_add(exp_smul(c, f), exp_smul(d, f))));
            }
            for (const auto& g : members)
                CHECK(exp_eq(exp_smul(c, exp_add(f, g)),
                             exp_add(exp_smul(c, f), exp_smul(c, g))));
        }
    }
}

TEST_CASE("inverting the variable sign inverts the element at cap 16") {
    Ring Q = ring_rationals();
    ExponentialElement e = make_exponential(classical_exp(16));
    ExponentialElement minus = exp_smul(el(Q, "-1"), e);
    CHECK(exp_eq(exp_add(e, minus), exp_one(Q, 16)));
}

TEST_CASE("the exponential map is linear in the structure's argument") {
    CheckOptions opts; // exhaustive
    Ring R = ring_integers_mod(16);
    DP dp = dp_square_zero(span(R, {el(R, "4")}));
    VerificationReport rep = dp_exp_linear(dp, 6, opts);
    CHECK(rep.passed());
    CHECK(rep.check == "dp_exp_linear");
    CHECK(rep.coverage.exhaustive);

    VerificationReport padic = dp_exp_linear(dp_padic(2, 5), 6, opts);
    CHECK(padic.passed());

    CheckOptions sampled;
    sampled.exhaustive = false;
    sampled.samples = 10;
    sampled.seed = 7;
    VerificationReport onq = dp_exp_linear(dp_rat_algebra(whole_ideal(ring_rationals())), 8, sampled);
    CHECK(onq.passed());
    CHECK(!onq.coverage.exhaustive);

    CHECK_THROWS_AS(dp_exp_linear(dp_rat_algebra(whole_ideal(ring_rationals())), 6, opts),
                    std::domain_error);
}

TEST_CASE("broken linearity is reported with the offending pair") {
    Ring R = ring_integers_mod(16);
    DP honest = dp_square_zero(span(R, {el(R, "4")}));
    // gamma_1(4) = 8 keeps every member exponential (8^2 = 0) but the map
    // a -> series no longer turns + into *.
    DP bad = corrupt_table(tabulate(honest, 8), 8, 1, el(R, "4"), el(R, "8"));
    CHECK(is_exponential(dp_exp(bad, el(R, "4"), 6).series).ok);
    VerificationReport rep = dp_exp_linear(bad, 6, CheckOptions{});
    CHECK(!rep.passed());
    REQUIRE(!rep.witnesses.empty());
    bool saw_four = false;
    for (const auto& w : rep.witnesses)
        for (const auto& [k, v] : w.inputs) saw_four = saw_four || v == "4";
    CHECK(saw_four);
}

TEST_CASE("two maps into the module glue along the sum of their domains") {
    Ring R = ring_monomial_quotient(ring_integers_mod(2), {"x", "y"}, {2, 2});
    Ideal M = span(R, {el(R, "x")});
    Ideal N = span(R, {el(R, "y")});
    DP dpx = dp_square_zero(M);
    DP dpy = dp_square_zero(N);
    unsigned cap = 4;
    auto f = [&](const RingElement& a) { return dp_exp(dpx, a, cap); };
    auto g = [&](const RingElement& a) { return dp_exp(dpy, a, cap); };

    SupExtension ext = linear_on_sup(M, N, f, g);
    CHECK(ext.report.passed());
    CHECK(ext.report.params.at("hypothesis") == "Pass");
    CHECK(ideal_eq(ext.sum, span(R, {el(R, "x"), el(R, "y")})));

    // The glued value at x + y determines divided powers on the sum; its
    // quadratic coefficient is the cross term.
    ExponentialElement h = ext.value.at(el(R, "x") + el(R, "y"));
    CHECK(coeff(h.series, {0}).is_one());
    CHECK(coeff(h.series, {1}) == el(R, "x") + el(R, "y"));
    CHECK(coeff(h.series, {2}) == el(R, "x*y"));
    CHECK(coeff(h.series, {3}).is_zero());

    // Restriction to each leg returns the original maps.
    for (const auto& a : ideal_elements(M)) CHECK(exp_eq(ext.value.at(a), f(a)));
    for (const auto& b : ideal_elements(N)) CHECK(exp_eq(ext.value.at(b), g(b)));
}

TEST_CASE("gluing against the zero ideal changes nothing") {
    Ring R = ring_integers_mod(16);
    Ideal M = span(R, {el(R, "4")});
    DP dp = dp_square_zero(M);
    auto f = [&](const RingElement& a) { return dp_exp(dp, a, 5); };
    auto g = [&](const RingElement&) { return exp_one(R, 5); };
    SupExtension ext = linear_on_sup(M, zero_ideal(R), f, g);
    CHECK(ext.report.passed());
    CHECK(ideal_eq(ext.sum, M));
    for (const auto& a : ideal_elements(M)) CHECK(exp_eq(ext.value.at(a), f(a)));
}

TEST_CASE("maps that disagree on the overlap are rejected with a witness") {
    Ring R = ring_monomial_quotient(ring_integers_mod(2), {"x", "y"}, {2, 2});
    Ideal M = span(R, {el(R, "x")});
    Ideal N = span(R, {el(R, "y")});
    DP dpx = dp_square_zero(M);
    auto f = [&](const RingElement& a) { return dp_exp(dpx, a, 4); };
    auto ones = [&](const RingElement&) { return exp_one(R, 4); };
    SupExtension ext = linear_on_sup(M, N, f, ones);
    CHECK(!ext.report.passed());
    CHECK(ext.report.params.at("hypothesis") == "Fail");
    REQUIRE(!ext.report.witnesses.empty());
    CHECK(ext.report.witnesses[0].input("z") == el(R, "x*y").str());
}

} // TEST_SUITE
