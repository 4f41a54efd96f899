#pragma once

#include "dpv/numeric.hpp"

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace dpv {

// Closed catalog of commutative ring families.  Every family carries its own
// exact decision procedures (units, nilpotency, enumeration); nothing here is
// approximate.
enum class RingFamily { Rationals, IntegersMod, TruncatedPadic, MonomialQuotient };

class RingContext;
using Ring = std::shared_ptr<const RingContext>;

class RingContext {
public:
    RingFamily family = RingFamily::Rationals;

    // IntegersMod: m >= 2.  TruncatedPadic: modulus = p^precision.
    BigInt modulus;
    BigInt prime;
    unsigned precision = 0;

    // MonomialQuotient base is Rationals or IntegersMod(base_modulus).
    RingFamily base_family = RingFamily::Rationals;
    BigInt base_modulus;
    std::vector<std::string> vars;
    std::vector<unsigned> caps; // x_i^caps[i] = 0, caps[i] >= 1

    bool is_finite() const;
    std::optional<BigInt> cardinality() const;
    // True for Q and for monomial quotients over Q: every n! is a unit.
    bool is_rational_algebra() const;
    std::string description() const;
};

Ring ring_rationals();
Ring ring_integers_mod(const BigInt& m);
Ring ring_truncated_padic(const BigInt& p, unsigned precision);
Ring ring_monomial_quotient(const Ring& base, std::vector<std::string> vars,
                            std::vector<unsigned> caps);

// Text forms: "Q", "Z/12", "Zp:2^8", "Z/2[x:2,y:2]", "Q[x:3]".
Ring parse_ring(const std::string& spec);

bool same_ring(const Ring& a, const Ring& b);

using ExpVec = std::vector<unsigned>;
// Sparse monomial -> coefficient map.  Over an IntegersMod base every stored
// coefficient is an integer residue (denominator 1) in [0, m).
using PolyMap = std::map<ExpVec, BigRat>;

class RingElement {
public:
    RingElement() = default; // null element, only as a container placeholder

    const Ring& ring() const { return ring_; }
    bool valid() const { return ring_ != nullptr; }

    bool is_zero() const;
    bool is_one() const;

    RingElement operator-() const;
    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    // Total order on canonical forms; fixes preimage choices and witness order.
    int cmp(const RingElement& o) const;
    bool operator<(const RingElement& o) const { return cmp(o) < 0; }

    std::string str() const;

    const BigRat& rat() const { return std::get<BigRat>(payload_); }
    const BigInt& residue() const { return std::get<BigInt>(payload_); }
    const PolyMap& poly() const { return std::get<PolyMap>(payload_); }

    static RingElement make(Ring R, std::variant<BigRat, BigInt, PolyMap> payload);

private:
    Ring ring_;
    std::variant<BigRat, BigInt, PolyMap> payload_;
};

RingElement ring_zero(const Ring& R);
RingElement ring_one(const Ring& R);
RingElement from_int(const Ring& R, const BigInt& n);
// Only defined on rational algebras.
RingElement from_rational(const Ring& R, const BigRat& q);
RingElement ring_pow(const RingElement& a, unsigned e);

// a^{-1} if a is a unit, the ring's zero otherwise (total by convention).
RingElement ring_inverse(const RingElement& a);

// TruncatedPadic only: exact valuation of the canonical representative,
// reported as precision N for the zero residue (meaning ">= N").
unsigned padic_val(const RingElement& a);

enum class Nilpotency { No, Yes, Inconclusive };
struct NilpotencyResult {
    Nilpotency verdict = Nilpotency::Inconclusive;
    unsigned index = 0; // least k with a^k = 0, when Yes
    unsigned bound = 0;
};

// Decides "exists k <= bound with a^k = 0".  Exact shortcuts: Q (field),
// monomial quotients over Q (nilpotent iff constant term zero).  Inconclusive
// is reserved for infinite families without an exact rule; no catalog family
// hits it.
NilpotencyResult is_nilpotent(const RingElement& a, unsigned bound);

// Smallest n > 0 with n*1 = 0, else 0.
BigInt characteristic(const Ring& R);

// Every element exactly once, in the canonical order.  Throws on infinite rings.
std::vector<RingElement> enumerate_elements(const Ring& R);

RingElement parse_element(const Ring& R, const std::string& text);

// Seeded sampling for Sampled-coverage checks.
RingElement sample_element(const Ring& R, std::mt19937_64& rng);

} // namespace dpv
