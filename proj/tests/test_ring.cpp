#include <doctest.h>

#include "dpv/ring.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

using namespace dpv;

namespace {

// Search the whole ring for a multiplicative inverse; the contract under test
// computes it by gcd / geometric series instead.
RingElement brute_inverse(const Ring& R, const RingElement& a) {
    for (const auto& b : enumerate_elements(R))
        if ((a * b).is_one()) return b;
    return ring_zero(R);
}

std::vector<std::string> element_strings(const Ring& R) {
    std::vector<std::string> out;
    for (const auto& e : enumerate_elements(R)) out.push_back(e.str());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_SUITE("exactring") {

TEST_CASE("ring spec text round-trips") {
    for (const char* spec : {"Q", "Z/12", "Z/9", "Zp:2^8", "Z/2[x:2,y:2]", "Q[x:3]", "Zp:3^5"}) {
        Ring R = parse_ring(spec);
        CHECK(R->description() == spec);
        CHECK(same_ring(R, parse_ring(R->description())));
    }
    CHECK_THROWS_AS(parse_ring("Z/1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ring("Zp:4^3"), std::invalid_argument);  // 4 is not prime
    CHECK_THROWS_AS(parse_ring("Zp:2"), std::invalid_argument);    // missing precision
    CHECK_THROWS_AS(parse_ring("Q[x:0]"), std::invalid_argument);  // cap must be >= 1
    CHECK_THROWS_AS(parse_ring("Q[x]"), std::invalid_argument);    // cap required
    CHECK_THROWS_AS(parse_ring("foo"), std::invalid_argument);
}

TEST_CASE("cardinality and finiteness per family") {
    CHECK_FALSE(parse_ring("Q")->is_finite());
    CHECK_FALSE(parse_ring("Q[x:3]")->is_finite());
    CHECK(parse_ring("Z/12")->cardinality().value() == 12);
    CHECK(parse_ring("Zp:2^8")->cardinality().value() == 256);
    CHECK(parse_ring("Z/2[x:2,y:2]")->cardinality().value() == 16);
    CHECK(parse_ring("Z/3[x:3]")->cardinality().value() == 27);
    CHECK_FALSE(parse_ring("Q[x:3]")->cardinality().has_value());
}

TEST_CASE("rational canonical forms and arithmetic") {
    Ring Q = ring_rationals();
    CHECK(parse_element(Q, "6/8").str() == "3/4");
    CHECK(parse_element(Q, "-6/8").str() == "-3/4");
    CHECK(parse_element(Q, "0/5").str() == "0");
    CHECK(parse_element(Q, "7").str() == "7");
    CHECK(parse_element(Q, "1/2") + parse_element(Q, "1/3") == parse_element(Q, "5/6"));
    CHECK(parse_element(Q, "1/2") * parse_element(Q, "2/3") == parse_element(Q, "1/3"));
    CHECK(-parse_element(Q, "2/5") == parse_element(Q, "-2/5"));
    CHECK(ring_inverse(parse_element(Q, "2/3")) == parse_element(Q, "3/2"));
    CHECK(ring_inverse(ring_zero(Q)).is_zero());
    CHECK_THROWS_AS(parse_element(Q, "1/0"), std::invalid_argument);
}

TEST_CASE("residues are canonicalized into [0, m)") {
    Ring R = parse_ring("Z/12");
    CHECK(from_int(R, -7) == from_int(R, 5));
    CHECK(from_int(R, -7).str() == "5");
    CHECK(parse_element(R, "-7") == from_int(R, 5));
    CHECK(from_int(R, 25) == from_int(R, 1));
    CHECK((from_int(R, 7) + from_int(R, 8)) == from_int(R, 3));
    CHECK((from_int(R, 5) * from_int(R, 5)) == from_int(R, 1));
}

TEST_CASE("inverse agrees with whole-ring search") {
    for (const char* spec : {"Z/12", "Z/9", "Zp:2^3", "Z/2[x:2,y:2]", "Z/4[x:2]"}) {
        Ring R = parse_ring(spec);
        for (const auto& a : enumerate_elements(R)) {
            RingElement expect = brute_inverse(R, a);
            RingElement got = ring_inverse(a);
            CAPTURE(spec);
            CAPTURE(a.str());
            CHECK(got == expect);
            if (!expect.is_zero()) CHECK((a * got).is_one());
        }
    }
}

TEST_CASE("geometric-series inverse in monomial quotients") {
    Ring R = parse_ring("Q[x:3]");
    RingElement one_plus_x = parse_element(R, "1 + x");
    CHECK(ring_inverse(one_plus_x) == parse_element(R, "1 - x + x^2"));
    CHECK((ring_inverse(one_plus_x) * one_plus_x).is_one());
    CHECK(ring_inverse(parse_element(R, "x")).is_zero());
    CHECK(ring_inverse(parse_element(R, "1/2")) == parse_element(R, "2"));

    Ring S = parse_ring("Z/4[x:2]");
    CHECK(ring_inverse(parse_element(S, "1 + 2x")) == parse_element(S, "1 + 2x"));
    CHECK(ring_inverse(parse_element(S, "2 + x")).is_zero()); // constant 2 not a unit mod 4
}

TEST_CASE("characteristic") {
    CHECK(characteristic(parse_ring("Q")) == 0);
    CHECK(characteristic(parse_ring("Q[x:3]")) == 0);
    CHECK(characteristic(parse_ring("Z/12")) == 12);
    CHECK(characteristic(parse_ring("Zp:2^8")) == 256);
    CHECK(characteristic(parse_ring("Z/2[x:2,y:2]")) == 2);
}

TEST_CASE("enumeration is complete and duplicate-free") {
    for (const char* spec : {"Z/8", "Zp:2^3", "Z/2[x:2,y:2]", "Z/3[x:3]"}) {
        Ring R = parse_ring(spec);
        auto all = enumerate_elements(R);
        CHECK(BigInt(all.size()) == R->cardinality().value());
        std::set<std::string> seen;
        for (const auto& e : all) {
            CHECK(seen.insert(e.str()).second); // distinct canonical forms
            CHECK(parse_element(R, e.str()) == e);
        }
    }
    CHECK_THROWS_AS(enumerate_elements(ring_rationals()), std::domain_error);
    CHECK_THROWS_AS(enumerate_elements(parse_ring("Q[x:3]")), std::domain_error);
}

TEST_CASE("the four elements of Z/2[x:2]") {
    auto names = element_strings(parse_ring("Z/2[x:2]"));
    CHECK(names == std::vector<std::string>{"0", "1", "1 + x", "x"});
}

TEST_CASE("monomial arithmetic against hand expansion") {
    Ring R = parse_ring("Z/2[x:2,y:2]");
    RingElement x = parse_element(R, "x"), y = parse_element(R, "y");
    // (x+y)^2 = x^2 + 2xy + y^2, and all three summands die here.
    CHECK(((x + y) * (x + y)).is_zero());
    CHECK_FALSE((x * y).is_zero());
    CHECK((ring_one(R) + x) * (ring_one(R) + y) == parse_element(R, "1 + x + y + x*y"));
    CHECK(x * x == ring_zero(R));

    Ring Qx = parse_ring("Q[x:3]");
    RingElement xe = parse_element(Qx, "x");
    RingElement cube = ring_pow(ring_one(Qx) + xe, 3);
    CHECK(cube == parse_element(Qx, "1 + 3x + 3x^2")); // x^3 truncates away
    CHECK(parse_element(Qx, "1/2 x + x^2") * parse_element(Qx, "2") ==
          parse_element(Qx, "x + 2x^2"));
}

TEST_CASE("nilpotency verdicts") {
    Ring Z8 = parse_ring("Z/8");
    auto r = is_nilpotent(from_int(Z8, 2), 8);
    CHECK(r.verdict == Nilpotency::Yes);
    CHECK(r.index == 3);
    CHECK(is_nilpotent(from_int(Z8, 3), 8).verdict == Nilpotency::No);
    CHECK(is_nilpotent(from_int(Z8, 0), 8).index == 1);
    // bound semantics: asks for an exponent within the bound
    CHECK(is_nilpotent(from_int(Z8, 2), 2).verdict == Nilpotency::No);

    Ring F2 = parse_ring("Z/2[x:2,y:2]");
    auto s = is_nilpotent(parse_element(F2, "x + y"), 4);
    CHECK(s.verdict == Nilpotency::Yes);
    CHECK(s.index == 2); // (x+y)^2 = 2xy = 0 in characteristic 2
    CHECK(is_nilpotent(parse_element(F2, "1 + x"), 16).verdict == Nilpotency::No);

    Ring Q = ring_rationals();
    CHECK(is_nilpotent(ring_zero(Q), 1).verdict == Nilpotency::Yes);
    CHECK(is_nilpotent(from_int(Q, 5), 64).verdict == Nilpotency::No);

    Ring Qx = parse_ring("Q[x:3]");
    auto t = is_nilpotent(parse_element(Qx, "2x + x^2"), 8);
    CHECK(t.verdict == Nilpotency::Yes);
    CHECK(t.index == 3);
    CHECK(is_nilpotent(parse_element(Qx, "1 + x"), 8).verdict == Nilpotency::No);
}

TEST_CASE("p-adic valuation bookkeeping") {
    Ring R = parse_ring("Zp:2^8");
    CHECK(padic_val(from_int(R, 12)) == 2);
    CHECK(padic_val(from_int(R, 1)) == 0);
    CHECK(padic_val(from_int(R, 128)) == 7);
    CHECK(padic_val(ring_zero(R)) == 8); // zero residue reports >= N
    CHECK_THROWS_AS(padic_val(from_int(parse_ring("Z/8"), 2)), std::invalid_argument);
}

TEST_CASE("precision drop Z/p^N -> Z/p^M is a ring homomorphism") {
    Ring N3 = parse_ring("Zp:2^3");
    Ring M2 = parse_ring("Zp:2^2");
    auto drop = [&](const RingElement& a) { return from_int(M2, a.residue()); };
    for (const auto& a : enumerate_elements(N3))
        for (const auto& b : enumerate_elements(N3)) {
            CHECK(drop(a + b) == drop(a) + drop(b));
            CHECK(drop(a * b) == drop(a) * drop(b));
        }
    CHECK(drop(ring_one(N3)).is_one());
}

TEST_CASE("string round-trip on random samples") {
    std::mt19937_64 rng(0xD1CEu);
    for (const char* spec : {"Q", "Z/12", "Zp:3^5", "Z/2[x:2,y:2]", "Q[x:3]", "Z/4[x:2]"}) {
        Ring R = parse_ring(spec);
        for (int i = 0; i < 50; ++i) {
            RingElement e = sample_element(R, rng);
            CAPTURE(spec);
            CAPTURE(e.str());
            CHECK(parse_element(R, e.str()) == e);
        }
    }
}

TEST_CASE("sampling is deterministic under a fixed seed") {
    Ring R = parse_ring("Z/2[x:2,y:2]");
    std::mt19937_64 a(42), b(42);
    for (int i = 0; i < 20; ++i) CHECK(sample_element(R, a) == sample_element(R, b));
}

TEST_CASE("pow matches iterated multiplication") {
    std::mt19937_64 rng(7);
    for (const char* spec : {"Q", "Z/9", "Q[x:3]"}) {
        Ring R = parse_ring(spec);
        for (int i = 0; i < 10; ++i) {
            RingElement a = sample_element(R, rng);
            RingElement acc = ring_one(R);
            for (unsigned e = 0; e <= 6; ++e) {
                CHECK(ring_pow(a, e) == acc);
                acc = acc * a;
            }
        }
    }
}

TEST_CASE("cmp is a total order consistent with equality") {
    Ring R = parse_ring("Z/2[x:2,y:2]");
    auto all = enumerate_elements(R);
    for (const auto& a : all)
        for (const auto& b : all) {
            CHECK((a.cmp(b) == 0) == (a == b));
            CHECK(a.cmp(b) == -b.cmp(a));
            if (a.cmp(b) < 0)
                for (const auto& c : all)
                    if (b.cmp(c) < 0) CHECK(a.cmp(c) < 0);
        }
}

TEST_CASE("element parse rejects what the ring cannot hold") {
    CHECK_THROWS_AS(parse_element(parse_ring("Z/8"), "x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_element(parse_ring("Z/2[x:2]"), "z"), std::invalid_argument);
    CHECK_THROWS_AS(parse_element(parse_ring("Z/2[x:2]"), "1/2"), std::invalid_argument);
    CHECK_THROWS_AS(from_rational(parse_ring("Z/9"), BigRat(1) / 2), std::invalid_argument);
    CHECK(from_rational(parse_ring("Q[x:3]"), BigRat(1) / 2) ==
          parse_element(parse_ring("Q[x:3]"), "1/2"));
}

TEST_CASE("mixed-ring operations are rejected") {
    RingElement a = from_int(parse_ring("Z/8"), 1);
    RingElement b = from_int(parse_ring("Z/9"), 1);
    CHECK_THROWS_AS((void)(a + b), std::invalid_argument);
    CHECK_THROWS_AS((void)(a * b), std::invalid_argument);
    // structurally equal contexts behave as the same ring
    RingElement c = from_int(parse_ring("Z/8"), 7);
    CHECK(a + c == from_int(parse_ring("Z/8"), 0));
}

} // TEST_SUITE
