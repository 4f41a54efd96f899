#include "dpv/constructions.hpp"

#include "dpv/combinat.hpp"

#include <map>

namespace dpv {

namespace {

[[noreturn]] void refuse(const std::string& msg) { throw std::invalid_argument(msg); }

// gamma_m(x) = x^m * (m!)^{-1}; the zero power goes first so inverses are only
// taken when m! really is a unit (m < n and m! divides (n-1)! times units).
DP invfact(const Ideal& I, unsigned n, std::string name) {
    const Ring R = I->ring;
    if (n == 0) refuse(name + ": nilpotency degree must be positive");
    RingElement fact = from_int(R, factorial(n - 1));
    if (!(fact * ring_inverse(fact)).is_one())
        refuse(name + ": " + std::to_string(n - 1) + "! = " + fact.str() +
               " is not a unit in " + R->description());
    if (!ideal_eq(ideal_pow(I, n), zero_ideal(R)))
        refuse(name + ": ideal power " + std::to_string(n) + " of " + I->key() +
               " is not the zero ideal");
    auto eval = [R](unsigned m, const RingElement& x) {
        if (m == 0) return ring_one(R);
        RingElement p = ring_pow(x, m);
        if (p.is_zero()) return p;
        return p * ring_inverse(from_int(R, factorial(m)));
    };
    return make_dp(R, I, DPRule::InverseFactorial, std::move(name), eval);
}

} // namespace

DP dp_trivial(const Ring& R) {
    auto eval = [R](unsigned m, const RingElement&) {
        return m == 0 ? ring_one(R) : ring_zero(R);
    };
    return make_dp(R, zero_ideal(R), DPRule::InverseFactorial, "trivial", eval);
}

DP dp_of_invertible_factorial(const Ideal& I, unsigned n) {
    return invfact(I, n, "inverse_factorial[n=" + std::to_string(n) + "]");
}

DP dp_square_zero(const Ideal& I) { return invfact(I, 2, "square_zero"); }

DP dp_prime_nilpotent(const Ideal& I, const BigInt& p) {
    if (!is_prime(p)) refuse("prime_nilpotent: " + p.str() + " is not prime");
    if (p > 64) refuse("prime_nilpotent: prime too large for the bounded checks");
    const Ring R = I->ring;
    NilpotencyResult nil = is_nilpotent(from_int(R, p), 128);
    if (nil.verdict != Nilpotency::Yes)
        refuse("prime_nilpotent: " + p.str() + " is not nilpotent in " + R->description() +
               (nil.verdict == Nilpotency::Inconclusive
                    ? " (undecided up to power " + std::to_string(nil.bound) + ")"
                    : ""));
    return invfact(I, static_cast<unsigned>(p), "prime_nilpotent[p=" + p.str() + "]");
}

DP dp_char_p(const Ideal& I) {
    const Ring R = I->ring;
    BigInt c = characteristic(R);
    if (c == 0 || !is_prime(c)) refuse("char_p: characteristic " + c.str() + " is not prime");
    if (c > 64) refuse("char_p: characteristic too large for the bounded checks");
    return invfact(I, static_cast<unsigned>(c), "char_p[p=" + c.str() + "]");
}

DP dp_rat_algebra(const Ideal& I) {
    const Ring R = I->ring;
    if (!R->is_rational_algebra())
        refuse("rat_algebra: " + R->description() + " does not contain the rationals");
    auto eval = [R](unsigned n, const RingElement& x) {
        if (n == 0) return ring_one(R);
        return ring_pow(x, n) * from_rational(R, BigRat(1) / BigRat(factorial(n)));
    };
    return make_dp(R, I, DPRule::RatAlgebra, "rat_algebra", eval);
}

DP dp_padic(const BigInt& p, unsigned N) {
    if (!is_prime(p)) refuse("padic: " + p.str() + " is not prime");
    if (N < 2) refuse("padic: precision must be at least 2");
    const Ring R = ring_truncated_padic(p, N);
    const Ideal I = span(R, {from_int(R, p)});
    const BigInt pN = int_pow(p, N);
    auto eval = [R, p, pN](unsigned n, const RingElement& x) {
        if (n == 0) return ring_one(R);
        const BigInt& r = x.residue();
        if (r == 0) return ring_zero(R);
        BigRat q = BigRat(int_pow(r, n)) / BigRat(factorial(n));
        if (padic_valuation(q, p) < 1)
            throw std::logic_error("padic rule: " + r.str() + "^" + std::to_string(n) + "/" +
                                   std::to_string(n) + "! has valuation below 1");
        BigInt inv;
        if (!mod_inverse(mod_floor(denominator(q), pN), pN, inv))
            throw std::logic_error("padic rule: denominator not invertible after reduction");
        return from_int(R, numerator(q) * inv);
    };
    return make_dp(R, I, DPRule::PadicCanonical,
                   "padic[p=" + p.str() + ",N=" + std::to_string(N) + "]", eval);
}

DP dp_induced_via_hom(const RingHom& f, const DP& target, const Ideal& I,
                      const CheckOptions& opts) {
    if (!same_ring(f->source, I->ring) || !same_ring(f->target, target->ring))
        refuse("induced structure: hom endpoints do not match");
    if (!hom_injective(f)) refuse("induced structure: hom is not injective");
    if (!ideal_eq(hom_image_ideal(f, I), target->ideal))
        refuse("induced structure: image of the ideal does not span the target ideal");

    std::string name = "induced[" + target->name + "]";
    if (hom_is_identity_like(f)) {
        DP t = target;
        RingHom hom = f;
        auto eval = [t, hom](unsigned n, const RingElement& x) {
            return dpow(t, n, hom_apply(hom, x));
        };
        return make_dp(I->ring, I, target->rule, std::move(name), eval, target->n_max);
    }

    if (!I->is_enumerable())
        throw std::domain_error("induced structure along a non-identity hom needs an enumerable ideal");
    // resolve f^{-1}(delta_n(f(x))) once, far enough out for the axiom checks
    const unsigned cap = 2 * opts.n_bound;
    std::map<std::string, RingElement> preimage;
    for (const auto& x : ideal_elements(I)) preimage.emplace(hom_apply(f, x).str(), x);
    auto table = std::make_shared<std::map<std::pair<unsigned, std::string>, RingElement>>();
    for (const auto& x : ideal_elements(I))
        for (unsigned n = 1; n <= cap; ++n) { // degree 0 is forced to 1, no preimage needed
            RingElement y = dpow(target, n, hom_apply(f, x));
            auto it = preimage.find(y.str());
            if (it == preimage.end())
                refuse("induced structure: " + y.str() + " has no preimage in " + I->key());
            (*table)[{n, x.str()}] = it->second;
        }
    Ring R = I->ring;
    auto eval = [table, name, R](unsigned n, const RingElement& x) {
        if (n == 0) return ring_one(R);
        auto it = table->find({n, x.str()});
        if (it == table->end())
            throw std::logic_error(name + ": value not tabulated at n=" + std::to_string(n));
        return it->second;
    };
    DP d = make_dp(I->ring, I, DPRule::Tabulated, name, eval, cap);
    return d;
}

VerificationReport check_ideal_add_compatible(const DP& left, const DP& right,
                                              const CheckOptions& opts) {
    if (!same_ring(left->ring, right->ring))
        refuse("sum construction: structures live on different rings");
    VerificationReport r;
    r.check = "ideal_add_compatible";
    r.coverage = opts.coverage();
    r.n_bound = opts.n_bound;
    r.params["left"] = left->name;
    r.params["right"] = right->name;

    Ideal K = ideal_inf(left->ideal, right->ideal);
    std::vector<RingElement> xs;
    if (opts.exhaustive) {
        xs = ideal_elements(K);
    } else {
        std::mt19937_64 rng(opts.seed);
        for (unsigned i = 0; i < opts.samples; ++i) xs.push_back(sample_ideal_element(K, rng));
    }
    for (const auto& x : xs)
        for (unsigned n = 0; n <= opts.n_bound; ++n) {
            RingElement a = dpow(left, n, x), b = dpow(right, n, x);
            if (a != b && r.witnesses.size() < 5)
                r.record_failure({{{"n", std::to_string(n)}, {"x", x.str()}}, a.str(), b.str()});
            else if (a != b)
                r.status = Status::Fail;
        }
    return r;
}

} // namespace dpv
