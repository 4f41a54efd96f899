#pragma once

#include "dpv/ideal.hpp"
#include "dpv/report.hpp"

#include <functional>
#include <optional>

namespace dpv {

enum class DPRule {
    Tabulated,
    InverseFactorial,
    RatAlgebra,
    PadicCanonical,
    Quotient,
    IdealAdd,
    Restricted,
};

class DividedPowers;
using DP = std::shared_ptr<const DividedPowers>;

// A family gamma_n : I -> A presented as an evaluation rule.  `eval` is the
// bare rule for x in I; all access goes through dpow(), which supplies the
// off-ideal-zero convention and the table bound check.
class DividedPowers {
public:
    Ring ring;
    Ideal ideal;
    DPRule rule = DPRule::Tabulated;
    std::string name; // label used in reports
    std::optional<unsigned> n_max; // Tabulated only: largest tabulated n

    std::function<RingElement(unsigned, const RingElement&)> eval;

    // provenance pointers, for audits and replay
    DP left, right; // Quotient/Restricted: left = underlying; IdealAdd: both
    RingHom along;  // Quotient: the projection
};

// Raised when a tabulated rule is asked beyond its n_max; deliberately not
// folded into the zero convention.
struct DPowBoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RingElement dpow(const DP& dp, unsigned n, const RingElement& x);

DP make_dp(Ring R, Ideal I, DPRule rule, std::string name,
           std::function<RingElement(unsigned, const RingElement&)> eval,
           std::optional<unsigned> n_max = std::nullopt);

// Snapshot of dp as an explicit table over its (enumerable) ideal.
DP tabulate(const DP& dp, unsigned n_max);
// The same snapshot with one entry overwritten: planted-violation material.
DP corrupt_table(const DP& dp, unsigned n_max, unsigned at_n, const RingElement& at_x,
                 const RingElement& value);

struct CheckOptions {
    unsigned n_bound = 6;
    bool exhaustive = true;
    unsigned samples = 64;
    std::uint64_t seed = 1;

    Coverage coverage() const {
        return exhaustive ? Coverage::Exhaustive() : Coverage::Sampled(samples, seed);
    }
};

// One report per defining law, in a fixed order:
//   dpow_zero   gamma_0(x) = 1
//   dpow_one    gamma_1(x) = x
//   dpow_mem    gamma_n(x) in I for n > 0
//   dpow_add    gamma_n(x+y) = sum_{i+j=n} gamma_i(x) gamma_j(y)
//   dpow_smul   gamma_n(a x) = a^n gamma_n(x)
//   dpow_mul    gamma_m(x) gamma_n(x) = C(m+n, m) gamma_{m+n}(x)
//   dpow_comp   gamma_m(gamma_n(x)) = ub(m, n) gamma_{m n}(x),  n >= 1
std::vector<VerificationReport> check_axioms(const DP& dp, const CheckOptions& opts = {});
// Convenience: all seven pass?
bool axioms_pass(const DP& dp, const CheckOptions& opts = {});

VerificationReport is_dp_morphism(const RingHom& f, const DP& source, const DP& target,
                                  const CheckOptions& opts = {});

// {x in A : delta_n(f(x)) = f(gamma_n(x)) for all n <= n_bound} plus a report
// certifying the set is an ideal.  Finite source ring only.
std::pair<std::vector<RingElement>, VerificationReport>
dp_equalizer(const RingHom& f, const DP& source, const DP& target,
             const CheckOptions& opts = {});

// Both halves of the generator criterion: commutation on S, then the full
// morphism check.  Hypothesis failure yields Inconclusive.
VerificationReport dp_morphism_from_generators(const RingHom& f, const DP& source,
                                               const DP& target,
                                               const std::vector<RingElement>& S,
                                               const CheckOptions& opts = {});

// If dp1 and dp2 agree on S up to n_bound, they agree on the whole ideal.
VerificationReport dp_unique_on_generators(const DP& dp1, const DP& dp2,
                                           const std::vector<RingElement>& S,
                                           const CheckOptions& opts = {});

// J <= I and gamma_n(J) <= J for 1 <= n <= n_bound.
VerificationReport is_sub_dp_ideal(const DP& dp, const Ideal& J,
                                   const CheckOptions& opts = {});
bool sub_dp(const DP& dp, const Ideal& J, const CheckOptions& opts = {});

// dp restricted to a sub-dp-ideal J (precondition checked).
DP restrict_dp(const DP& dp, const Ideal& J, const CheckOptions& opts = {});

// Two equivalent readings of "J meets I in a sub-dp-ideal": containment of
// gamma on J cap I versus the congruence formulation on pairs a - b in J.
// The report passes when the two sides agree (whether both true or both false).
VerificationReport inter_sub_dp_iff(const DP& dp, const Ideal& J,
                                    const CheckOptions& opts = {});

// span(S) sub-dp iff gamma_n(s) in span(S) for every generator s.
VerificationReport span_sub_dp_iff(const DP& dp, const std::vector<RingElement>& S,
                                   const CheckOptions& opts = {});

// I*J is a sub-dp-ideal for every J.
VerificationReport mul_sub_dp(const DP& dp, const Ideal& J, const CheckOptions& opts = {});

// The complete lattice of sub-dp-ideals of a structure on a finite ring.
class SubDPLattice {
public:
    DP dp;
    unsigned n_bound = 6;
    std::vector<Ideal> all; // every sub-dp-ideal, sorted by (size, key)
    Ideal top;              // I
    Ideal bot;              // (0)

    bool contains(const Ideal& J) const;
    Ideal sup(const Ideal& a, const Ideal& b) const;
    Ideal inf(const Ideal& a, const Ideal& b) const;
    // Inf over a set of sub-dp-ideals; the empty set yields I (top), not (1).
    Ideal Inf(const std::vector<Ideal>& s) const;
    // Least sub-dp-ideal containing S, by filtering the enumeration.
    Ideal span_filter(const std::vector<RingElement>& S) const;
    // Ideal spanned by {gamma_n(s) : s in S, 1 <= n <= n_bound}.
    Ideal span_gamma(const std::vector<RingElement>& S) const;
};

SubDPLattice sub_dp_lattice(const DP& dp, const CheckOptions& opts = {});

// Induced structure on span(f(I)) along a surjective hom; requires the
// kernel-meets-I sub-dp hypothesis (throws with the witness otherwise).
DP quotient_dp(const DP& dp, const RingHom& f, const CheckOptions& opts = {});

// The full audit trail for a quotient: hypothesis, well-definedness over all
// fibers, the projection as dp morphism, and pointwise uniqueness against an
// alternative preimage choice.
std::vector<VerificationReport> quotient_audit(const DP& dp, const RingHom& f,
                                               const DP& qdp,
                                               const CheckOptions& opts = {});

// Recompute both sides of a failed axiom check from its recorded inputs.
struct ReplayResult {
    std::string expected;
    std::string actual;
    bool reproduced = false; // recomputation matches the witness and still differs
};
ReplayResult replay_axiom_witness(const DP& dp, const std::string& check, const Witness& w);

} // namespace dpv
