#pragma once

#include "dpv/dpcore.hpp"

namespace dpv {

// gamma on the zero ideal: gamma_0 = 1 and nothing else to choose.
DP dp_trivial(const Ring& R);

// gamma_m(x) = x^m / m! on an ideal with I^n = (0) and (n-1)! a unit.
// Both preconditions are verified; violations raise std::invalid_argument
// carrying the offending value.
DP dp_of_invertible_factorial(const Ideal& I, unsigned n);

// The three standard specializations of the rule above.
DP dp_square_zero(const Ideal& I);                    // I^2 = (0)
DP dp_prime_nilpotent(const Ideal& I, const BigInt& p); // p nilpotent prime, I^p = (0)
DP dp_char_p(const Ideal& I);                         // char(A) = p prime, I^p = (0)

// gamma_n(x) = x^n / n! on any ideal of a ring containing the rationals.
DP dp_rat_algebra(const Ideal& I);

// The canonical structure on (p) inside the p-adics truncated at p^N, N >= 2:
// lift to a rational, divide by n!, confirm the valuation stays >= 1, reduce.
// A valuation below 1 is a hard error (logic_error), never a silent zero.
DP dp_padic(const BigInt& p, unsigned N);

// Pull a structure back through an injective hom with span(f(I)) = target
// ideal: gamma_n(x) = f^{-1}(delta_n(f(x))).  Preimages are resolved and
// cached up to 2*opts.n_bound at construction.
DP dp_induced_via_hom(const RingHom& f, const DP& target, const Ideal& I,
                      const CheckOptions& opts = {});

// --- sums of dp-ideals ---------------------------------------------------

// Two structures qualify for the sum construction when they agree on the
// intersection of their ideals; check_ideal_add_compatible verifies exactly
// that hypothesis.
VerificationReport check_ideal_add_compatible(const DP& left, const DP& right,
                                              const CheckOptions& opts = {});

// Direct route: gamma_n(z) = sum_{i+j=n} gamma_i(x) delta_j(y) for one cached
// decomposition z = x + y, with an audit over *all* decompositions of every
// element (conflicting decompositions are a hard error).  Finite ideals only.
DP ideal_add_dp_v1(const DP& left, const DP& right, const CheckOptions& opts = {});

// Exponential route: read gamma_n(z) off the coefficient of X^n in the
// product exp(x) * exp(y).  Finite ideals only.
DP ideal_add_dp(const DP& left, const DP& right, const CheckOptions& opts = {});

// Any structure on I+J restricting to `left` on I and `right` on J equals the
// sum structure; realized through the generator uniqueness theorem with the
// union of the two generating sets.
VerificationReport ideal_add_uniqueness(const DP& left, const DP& right, const DP& candidate,
                                        const CheckOptions& opts = {});

} // namespace dpv
