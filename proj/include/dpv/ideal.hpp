#pragma once

#include "dpv/ring.hpp"

namespace dpv {

class IdealData;
using Ideal = std::shared_ptr<const IdealData>;

// Finitely generated ideal with a per-family normal form giving decidable
// membership:
//   Rationals            zero-or-whole flag (fields have no other ideals)
//   IntegersMod          gcd generator d with d | m; d = m encodes (0)
//   TruncatedPadic       valuation threshold k, the ideal (p^k); k = N is (0)
//   MonomialQuotient/Z   explicit element set, closed under + and ring *
//   MonomialQuotient/Q   antichain of monomial generators (exponent vectors)
// Over an infinite monomial quotient only generators of the shape
// unit * monomial are representable; span() rejects anything else.
class IdealData {
public:
    Ring ring;
    std::vector<RingElement> generators; // nonzero generators as supplied

    bool whole = false;
    bool zero = false;
    BigInt residue_gen;                // IntegersMod
    unsigned padic_threshold = 0;      // TruncatedPadic
    std::vector<ExpVec> mono_gens;     // MonomialQuotient over Q, minimal antichain
    std::vector<RingElement> elems;    // finite families, sorted by cmp

    bool is_zero() const { return zero; }
    bool is_whole() const { return whole; }
    // Element set enumerable (ring finite, or the ideal is (0))?
    bool is_enumerable() const;
    // Canonical identity string; equal ideals of the same ring share it.
    std::string key() const;
};

Ideal span(const Ring& R, const std::vector<RingElement>& gens);
Ideal zero_ideal(const Ring& R);
Ideal whole_ideal(const Ring& R);

bool mem(const Ideal& I, const RingElement& x);
bool ideal_eq(const Ideal& I, const Ideal& J);
bool ideal_subset(const Ideal& I, const Ideal& J);

Ideal ideal_sum(const Ideal& I, const Ideal& J);
Ideal ideal_mul(const Ideal& I, const Ideal& J);
Ideal ideal_inf(const Ideal& I, const Ideal& J);
Ideal ideal_pow(const Ideal& I, unsigned n);

// Every element, sorted by the ring's total order.  Throws when not enumerable.
std::vector<RingElement> ideal_elements(const Ideal& I);
RingElement sample_ideal_element(const Ideal& I, std::mt19937_64& rng);

// All distinct ideals with <= gen_cap generators, deduplicated by key, sorted
// by (element count, key).  Finite rings only.
std::vector<Ideal> enumerate_ideals(const Ring& R, unsigned gen_cap);

// Proof that an enumerate_ideals result lists *every* ideal: it contains all
// principal ideals and is closed under pairwise sums (any ideal of a finite
// ring is a finite sum of principal ideals).  Returns true when both hold.
bool ideal_enumeration_complete(const Ring& R, const std::vector<Ideal>& list);

// ---------------------------------------------------------------------------
// Ring homomorphisms between catalog rings.

enum class HomKind { Identity, ModReduction, PadicPrecisionDrop, QuotientProjection, Composite };

class RingHomData;
using RingHom = std::shared_ptr<const RingHomData>;

class RingHomData {
public:
    HomKind kind = HomKind::Identity;
    Ring source;
    Ring target;

    Ideal proj_ideal;               // QuotientProjection: the ideal being killed
    std::vector<int> var_map;       // monomial projection: source var -> target var, -1 = dropped
    std::vector<unsigned> new_caps; // monomial projection: caps on kept source vars
    RingHom first, second;          // Composite: second(first(x))
};

RingElement hom_apply(const RingHom& f, const RingElement& x);
RingHom hom_identity(const Ring& R);
// Z/m -> Z/d for d | m, d >= 2.
RingHom hom_mod_reduction(const Ring& source, const Ring& target);
// Zp:p^N -> Zp:p^M for M <= N.
RingHom hom_precision_drop(const Ring& source, unsigned M);
RingHom hom_compose(const RingHom& inner, const RingHom& outer);

bool hom_is_identity_like(const RingHom& f); // identity or composite of identities

// Exhaustive on finite sources; throws for infinite non-identity sources.
std::vector<RingElement> hom_kernel_elements(const RingHom& f);
Ideal hom_kernel(const RingHom& f);
bool hom_injective(const RingHom& f);
bool hom_surjective(const RingHom& f);
// Image of an ideal as an ideal of the target: span(f(gens)).
Ideal hom_image_ideal(const RingHom& f, const Ideal& I);

// Quotient A -> A/J for recognized patterns: Z/m by (d); TruncatedPadic by
// (p^k), k >= 1; MonomialQuotient by variable-power ideals; J = (0) anywhere.
// Unsupported combinations throw with an explicit description.
std::pair<Ring, RingHom> quotient_ring(const Ring& R, const Ideal& J);

} // namespace dpv
