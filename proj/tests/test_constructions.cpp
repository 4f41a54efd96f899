#include <doctest.h>

#include "dpv/combinat.hpp"
#include "dpv/constructions.hpp"
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

// Reduce num/den mod p^N without modular inverses: scan for the unique
// residue t with den*t = num.  Slow and obviously correct.
RingElement reduce_brute(const Ring& R, const BigRat& q, const BigInt& pN) {
    BigInt num = numerator(q), den = denominator(q);
    for (BigInt t = 0; t < pN; ++t)
        if (mod_floor(den * t - num, pN) == 0) return from_int(R, t);
    throw std::logic_error("no residue found: denominator shares a factor with the modulus");
}

// v_p(n!) through the digit-sum identity; independent of any factorization.
long factorial_valuation(unsigned n, const BigInt& p) {
    return static_cast<long>((BigInt(n) - digit_sum(n, p)) / (p - 1));
}

} // namespace

TEST_SUITE("constructions") {

TEST_CASE("trivial structure: gamma_0 = 1 is the only nonzero value") {
    Ring R = ring_integers_mod(4);
    DP dp = dp_trivial(R);
    CHECK(ideal_eq(dp->ideal, zero_ideal(R)));
    CHECK(dpow(dp, 0, ring_zero(R)).is_one());
    for (unsigned n = 1; n <= 9; ++n) CHECK(dpow(dp, n, ring_zero(R)).is_zero());
    CHECK(dpow(dp, 3, el(R, "2")).is_zero()); // off-ideal convention
    CHECK(axioms_pass(dp, CheckOptions{}));

    DP on_q = dp_trivial(ring_rationals());
    CheckOptions sampled;
    sampled.exhaustive = false;
    sampled.samples = 24;
    CHECK(axioms_pass(on_q, sampled));
}

TEST_CASE("inverse-factorial rule refuses non-unit factorials and fat ideals") {
    Ring R = ring_integers_mod(16);
    Ideal I4 = span(R, {el(R, "4")});
    // 3! = 6 shares a factor 2 with 16
    CHECK(throws_containing<std::invalid_argument>([&] { dp_of_invertible_factorial(I4, 4); }, "is not a unit"));
    // (2)^2 = (4) != (0)
    CHECK(throws_containing<std::invalid_argument>([&] { dp_square_zero(span(R, {el(R, "2")})); }, "not the zero ideal"));
    CHECK_THROWS_AS(dp_of_invertible_factorial(I4, 0), std::invalid_argument);
}

TEST_CASE("square-zero values: identity in degree one, zero from degree two") {
    Ring R = ring_integers_mod(16);
    DP dp = dp_square_zero(span(R, {el(R, "4")}));
    CHECK(dp->rule == DPRule::InverseFactorial);
    for (const auto& x : ideal_elements(dp->ideal)) {
        CHECK(dpow(dp, 0, x).is_one());
        CHECK(dpow(dp, 1, x) == x);
        for (unsigned n = 2; n <= 8; ++n) CHECK(dpow(dp, n, x).is_zero());
    }
}

TEST_CASE("prime-nilpotent structure on (3) in Z/9") {
    Ring R = ring_integers_mod(9);
    Ideal I = span(R, {el(R, "3")});
    DP dp = dp_prime_nilpotent(I, 3);
    CHECK(dpow(dp, 2, el(R, "3")).is_zero()); // 3^2 = 0 before the division by 2!
    CHECK(axioms_pass(dp, CheckOptions{}));

    CHECK(throws_containing<std::invalid_argument>([&] { dp_prime_nilpotent(I, 2); }, "not nilpotent"));
    CHECK(throws_containing<std::invalid_argument>([&] { dp_prime_nilpotent(I, 4); }, "not prime"));
}

TEST_CASE("characteristic-p structure on a truncated polynomial line") {
    Ring R = ring_monomial_quotient(ring_integers_mod(3), {"x"}, {3});
    DP dp = dp_char_p(span(R, {el(R, "x")}));
    // 1/2 = 2 mod 3, so gamma_2(x) = 2x^2
    CHECK(dpow(dp, 2, el(R, "x")) == el(R, "2*x^2"));
    CHECK(dpow(dp, 3, el(R, "x")).is_zero());
    CHECK(axioms_pass(dp, CheckOptions{}));

    CHECK(throws_containing<std::invalid_argument>([&] { dp_char_p(span(ring_integers_mod(9), {el(ring_integers_mod(9), "3")})); }, "not prime"));
}

TEST_CASE("rational-algebra rule divides powers by factorials exactly") {
    Ring Q = ring_rationals();
    DP dp = dp_rat_algebra(whole_ideal(Q));
    CHECK(dp->rule == DPRule::RatAlgebra);
    CHECK(dpow(dp, 3, el(Q, "1/2")) == el(Q, "1/48"));
    CHECK(dpow(dp, 4, el(Q, "2")) == el(Q, "2/3"));
    CHECK(dpow(dp, 0, el(Q, "-7")).is_one());

    Ring Rx = ring_monomial_quotient(Q, {"x"}, {4});
    DP dpx = dp_rat_algebra(span(Rx, {el(Rx, "x")}));
    CHECK(dpow(dpx, 2, el(Rx, "x")) == el(Rx, "1/2*x^2"));
    CHECK(dpow(dpx, 4, el(Rx, "x")).is_zero()); // x^4 dies at the cap
    CheckOptions sampled;
    sampled.exhaustive = false;
    sampled.samples = 32;
    sampled.n_bound = 5;
    CHECK(axioms_pass(dpx, sampled));

    CHECK(throws_containing<std::invalid_argument>([&] { dp_rat_algebra(whole_ideal(ring_integers_mod(9))); }, "rationals"));
}

TEST_CASE("canonical p-adic rule matches a scan-based rational reduction") {
    const BigInt p = 2;
    const unsigned N = 5;
    DP dp = dp_padic(p, N);
    Ring R = dp->ring;
    const BigInt pN = int_pow(p, N);
    for (BigInt r = 0; r < pN; r += p) {
        RingElement x = from_int(R, r);
        for (unsigned n = 1; n <= 8; ++n) {
            if (r == 0) {
                CHECK(dpow(dp, n, x).is_zero());
                continue;
            }
            BigRat q = BigRat(int_pow(r, n)) / BigRat(factorial(n));
            // valuation claim, twice over: reduced fraction and counting formula
            long direct = padic_valuation(q, p);
            long formula = static_cast<long>(n) * padic_valuation(r, p) - factorial_valuation(n, p);
            CHECK(direct == formula);
            CHECK(direct >= 1);
            CHECK(dpow(dp, n, x) == reduce_brute(R, q, pN));
        }
    }
}

TEST_CASE("p-adic values do not depend on the chosen lift") {
    const BigInt p = 3;
    const unsigned N = 3;
    DP dp = dp_padic(p, N);
    Ring R = dp->ring;
    const BigInt pN = int_pow(p, N);
    for (BigInt r = p; r < pN; r += p)
        for (unsigned n = 1; n <= 6; ++n)
            for (BigInt k = 1; k <= 2; ++k) {
                BigRat lifted = BigRat(int_pow(r + k * pN, n)) / BigRat(factorial(n));
                CHECK(dpow(dp, n, from_int(R, r)) == reduce_brute(R, lifted, pN));
            }
}

TEST_CASE("p-adic frozen values") {
    DP d2 = dp_padic(2, 8);
    CHECK(dpow(d2, 2, el(d2->ring, "2")) == el(d2->ring, "2")); // 4/2
    DP d3 = dp_padic(3, 5);
    CHECK(dpow(d3, 3, el(d3->ring, "3")) == el(d3->ring, "126")); // 27/6 = 9/2 = 9 * 122
}

TEST_CASE("the valuation guard is a hard error, shielded by the ideal gate") {
    DP dp = dp_padic(2, 4);
    Ring R = dp->ring;
    // through the gate: 1 is outside (2), so the convention returns 0
    CHECK(dpow(dp, 1, el(R, "1")).is_zero());
    // the bare rule on the same input violates the valuation claim and says so
    CHECK_THROWS_AS(dp->eval(1, el(R, "1")), std::logic_error);
}

TEST_CASE("p-adic constructor refusals") {
    CHECK(throws_containing<std::invalid_argument>([&] { dp_padic(4, 3); }, "not prime"));
    CHECK(throws_containing<std::invalid_argument>([&] { dp_padic(2, 1); }, "at least 2"));
}

TEST_CASE("axiom matrix stays green for both p-adic exhaustive configurations") {
    CheckOptions opts;
    CHECK(axioms_pass(dp_padic(2, 4), opts));
    CHECK(axioms_pass(dp_padic(3, 3), opts));
}

TEST_CASE("inducing along the identity reproduces the structure") {
    DP target = dp_padic(3, 3);
    Ring R = target->ring;
    Ideal I = span(R, {el(R, "3")});
    DP ind = dp_induced_via_hom(hom_identity(R), target, I);
    for (const auto& x : ideal_elements(I))
        for (unsigned n = 0; n <= 8; ++n) CHECK(dpow(ind, n, x) == dpow(target, n, x));
}

TEST_CASE("inducing along a bijective reduction tabulates the pullback") {
    Ring R = ring_integers_mod(9);
    Ideal I = span(R, {el(R, "3")});
    DP target = dp_prime_nilpotent(I, 3);
    RingHom f = hom_mod_reduction(R, R); // bijective, but not the Identity kind
    DP ind = dp_induced_via_hom(f, target, I);
    CHECK(ind->rule == DPRule::Tabulated);
    for (const auto& x : ideal_elements(I))
        for (unsigned n = 0; n <= 12; ++n) CHECK(dpow(ind, n, x) == dpow(target, n, x));
    CHECK(axioms_pass(ind, CheckOptions{}));
}

TEST_CASE("inducing refuses non-injective maps and mismatched ideals") {
    Ring R9 = ring_integers_mod(9), R3 = ring_integers_mod(3);
    DP tiny = dp_trivial(R3);
    CHECK(throws_containing<std::invalid_argument>([&] { dp_induced_via_hom(hom_mod_reduction(R9, R3), tiny, span(R9, {el(R9, "3")})); }, "not injective"));

    DP target = dp_prime_nilpotent(span(R9, {el(R9, "3")}), 3);
    CHECK(throws_containing<std::invalid_argument>([&] { dp_induced_via_hom(hom_identity(R9), target, zero_ideal(R9)); }, "does not span"));
}

TEST_CASE("sum compatibility hypothesis on the intersection of the ideals") {
    Ring R = ring_integers_mod(16);
    DP left = dp_square_zero(span(R, {el(R, "4")}));
    DP right = dp_square_zero(span(R, {el(R, "8")}));
    VerificationReport ok = check_ideal_add_compatible(left, right, CheckOptions{});
    CHECK(ok.passed());

    DP twisted = corrupt_table(right, 12, 2, el(R, "8"), el(R, "8"));
    VerificationReport bad = check_ideal_add_compatible(left, twisted, CheckOptions{});
    CHECK(bad.status == Status::Fail);
    REQUIRE(!bad.witnesses.empty());
    CHECK(bad.witnesses.front().input("x") == "8");
}

TEST_CASE("tabulated snapshot is pointwise identical to its source") {
    DP dp = dp_padic(2, 4);
    DP tab = tabulate(dp, 10);
    for (const auto& x : ideal_elements(dp->ideal))
        for (unsigned n = 0; n <= 10; ++n) CHECK(dpow(tab, n, x) == dpow(dp, n, x));
}

} // TEST_SUITE
