#include "dpv/ideal.hpp"

#include <algorithm>
#include <boost/multiprecision/integer.hpp>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dpv {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

bool exp_le(const ExpVec& a, const ExpVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// Keep only minimal exponent vectors under componentwise divisibility.
std::vector<ExpVec> antichain(std::vector<ExpVec> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<ExpVec> out;
    for (const auto& e : v) {
        bool dominated = false;
        for (const auto& f : v)
            if (f != e && exp_le(f, e)) { dominated = true; break; }
        if (!dominated) out.push_back(e);
    }
    return out;
}

RingElement monomial_element(const Ring& R, const ExpVec& e) {
    PolyMap p;
    p.emplace(e, BigRat(1));
    return RingElement::make(R, std::move(p));
}

// Element set of the ideal generated by gens in a finite ring: close {0}
// under adding generator multiples.  The result is exactly {sum r_i g_i}.
std::vector<RingElement> finite_closure(const Ring& R, const std::vector<RingElement>& gens) {
    std::vector<RingElement> mults;
    {
        std::set<RingElement> seen;
        for (const auto& r : enumerate_elements(R))
            for (const auto& g : gens) {
                RingElement m = r * g;
                if (!m.is_zero() && seen.insert(m).second) mults.push_back(m);
            }
    }
    std::set<RingElement> closed{ring_zero(R)};
    std::vector<RingElement> work{ring_zero(R)};
    while (!work.empty()) {
        RingElement s = work.back();
        work.pop_back();
        for (const auto& m : mults) {
            RingElement t = s + m;
            if (closed.insert(t).second) work.push_back(t);
        }
    }
    return {closed.begin(), closed.end()};
}

void verify_finite_ideal_closed(const Ring& R, const std::vector<RingElement>& elems) {
    std::set<RingElement> in(elems.begin(), elems.end());
    for (const auto& a : elems) {
        for (const auto& b : elems)
            if (!in.count(a + b)) throw std::logic_error("ideal closure not additive");
        for (const auto& r : enumerate_elements(R))
            if (!in.count(a * r)) throw std::logic_error("ideal closure not absorbing");
    }
}

// Over an infinite monomial quotient a generator must factor as
// unit * monomial; its content exponent then generates the same ideal.
ExpVec content_exponent(const RingElement& g) {
    const PolyMap& p = g.poly();
    ExpVec e = p.begin()->first;
    for (const auto& [ev, _] : p)
        for (size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], ev[i]);
    if (!p.count(e))
        fail("unsupported generator over infinite monomial quotient (not unit * monomial): " +
             g.str());
    return e;
}

} // namespace

bool IdealData::is_enumerable() const { return zero || ring->is_finite(); }

std::string IdealData::key() const {
    switch (ring->family) {
    case RingFamily::Rationals: return whole ? "Q:(1)" : "Q:(0)";
    case RingFamily::IntegersMod: return "(" + residue_gen.str() + ")";
    case RingFamily::TruncatedPadic:
        return "(" + ring->prime.str() + "^" + std::to_string(padic_threshold) + ")";
    case RingFamily::MonomialQuotient: {
        if (ring->is_finite()) {
            std::string k = "{";
            for (const auto& e : elems) k += e.str() + ";";
            return k + "}";
        }
        std::string k = "mono{";
        for (const auto& ev : mono_gens) {
            k += "(";
            for (unsigned x : ev) k += std::to_string(x) + ",";
            k += ")";
        }
        return k + "}";
    }
    }
    return "?";
}

Ideal span(const Ring& R, const std::vector<RingElement>& gens_in) {
    auto data = std::make_shared<IdealData>();
    data->ring = R;
    for (const auto& g : gens_in) {
        if (!same_ring(g.ring(), R)) fail("generator from a different ring");
        if (!g.is_zero()) data->generators.push_back(g);
    }
    const auto& gens = data->generators;

    switch (R->family) {
    case RingFamily::Rationals:
        data->whole = !gens.empty();
        data->zero = gens.empty();
        break;
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic: {
        BigInt d = R->modulus;
        for (const auto& g : gens) d = gcd(d, g.residue());
        data->residue_gen = d;
        data->whole = d == 1;
        data->zero = d == R->modulus;
        if (R->family == RingFamily::TruncatedPadic)
            data->padic_threshold =
                d == R->modulus ? R->precision : padic_valuation(d, R->prime);
        break;
    }
    case RingFamily::MonomialQuotient:
        if (R->is_finite()) {
            data->elems = finite_closure(R, gens);
            verify_finite_ideal_closed(R, data->elems);
            data->zero = data->elems.size() == 1;
            data->whole = BigInt(data->elems.size()) == R->cardinality().value();
        } else {
            std::vector<ExpVec> exps;
            for (const auto& g : gens) exps.push_back(content_exponent(g));
            data->mono_gens = antichain(std::move(exps));
            data->zero = data->mono_gens.empty();
            data->whole = !data->zero && data->mono_gens.front() == ExpVec(R->vars.size(), 0);
        }
        break;
    }
    return data;
}

Ideal zero_ideal(const Ring& R) { return span(R, {}); }
Ideal whole_ideal(const Ring& R) { return span(R, {ring_one(R)}); }

bool mem(const Ideal& I, const RingElement& x) {
    if (!same_ring(I->ring, x.ring())) fail("membership query from a different ring");
    switch (I->ring->family) {
    case RingFamily::Rationals: return I->whole || x.is_zero();
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic:
        if (I->zero) return x.is_zero();
        return x.residue() % I->residue_gen == 0;
    case RingFamily::MonomialQuotient: {
        if (I->ring->is_finite())
            return std::binary_search(I->elems.begin(), I->elems.end(), x);
        if (x.is_zero()) return true;
        for (const auto& [ev, _] : x.poly()) {
            bool covered = false;
            for (const auto& g : I->mono_gens)
                if (exp_le(g, ev)) { covered = true; break; }
            if (!covered) return false;
        }
        return true;
    }
    }
    return false;
}

bool ideal_eq(const Ideal& I, const Ideal& J) {
    return same_ring(I->ring, J->ring) && I->key() == J->key();
}

bool ideal_subset(const Ideal& I, const Ideal& J) {
    if (!same_ring(I->ring, J->ring)) fail("subset query across rings");
    // span(gens) <= J iff every generator lies in J
    for (const auto& g : I->generators)
        if (!mem(J, g)) return false;
    return true;
}

Ideal ideal_sum(const Ideal& I, const Ideal& J) {
    if (!same_ring(I->ring, J->ring)) fail("ideal_sum across rings");
    std::vector<RingElement> gens = I->generators;
    gens.insert(gens.end(), J->generators.begin(), J->generators.end());
    return span(I->ring, gens);
}

Ideal ideal_mul(const Ideal& I, const Ideal& J) {
    if (!same_ring(I->ring, J->ring)) fail("ideal_mul across rings");
    std::vector<RingElement> gens;
    for (const auto& a : I->generators)
        for (const auto& b : J->generators) gens.push_back(a * b);
    return span(I->ring, gens);
}

Ideal ideal_inf(const Ideal& I, const Ideal& J) {
    if (!same_ring(I->ring, J->ring)) fail("ideal_inf across rings");
    const Ring& R = I->ring;
    switch (R->family) {
    case RingFamily::Rationals:
        return (I->whole && J->whole) ? whole_ideal(R) : zero_ideal(R);
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic: {
        BigInt l = lcm(I->residue_gen, J->residue_gen);
        return span(R, {from_int(R, mod_floor(l, R->modulus))});
        // lcm of divisors of m divides m, so (l mod m) generates (l)
    }
    case RingFamily::MonomialQuotient: {
        if (R->is_finite()) {
            std::vector<RingElement> inter;
            std::set_intersection(I->elems.begin(), I->elems.end(), J->elems.begin(),
                                  J->elems.end(), std::back_inserter(inter));
            return span(R, inter);
        }
        std::vector<RingElement> gens;
        for (const auto& a : I->mono_gens)
            for (const auto& b : J->mono_gens) {
                ExpVec e(a.size());
                bool dead = false;
                for (size_t i = 0; i < a.size(); ++i) {
                    e[i] = std::max(a[i], b[i]);
                    if (e[i] >= R->caps[i]) { dead = true; break; }
                }
                if (!dead) gens.push_back(monomial_element(R, e));
            }
        return span(R, gens);
    }
    }
    fail("bad ring");
}

Ideal ideal_pow(const Ideal& I, unsigned n) {
    Ideal r = whole_ideal(I->ring);
    for (unsigned i = 0; i < n; ++i) r = ideal_mul(r, I);
    return r;
}

std::vector<RingElement> ideal_elements(const Ideal& I) {
    const Ring& R = I->ring;
    if (I->zero) return {ring_zero(R)};
    if (!R->is_finite())
        throw std::domain_error("ideal of an infinite ring is not enumerable");
    switch (R->family) {
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic: {
        std::vector<RingElement> out;
        for (BigInt k = 0; k * I->residue_gen < R->modulus; ++k)
            out.push_back(from_int(R, k * I->residue_gen));
        return out;
    }
    case RingFamily::MonomialQuotient: return I->elems;
    default: break;
    }
    throw std::domain_error("ideal of an infinite ring is not enumerable");
}

RingElement sample_ideal_element(const Ideal& I, std::mt19937_64& rng) {
    const Ring& R = I->ring;
    if (I->zero) return ring_zero(R);
    if (R->is_finite()) {
        auto all = ideal_elements(I);
        return all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)];
    }
    if (I->whole) return sample_element(R, rng);
    // infinite monomial quotient: random combination of the monomial generators
    RingElement acc = ring_zero(R);
    for (const auto& e : I->mono_gens)
        acc = acc + sample_element(R, rng) * monomial_element(R, e);
    return acc;
}

std::vector<Ideal> enumerate_ideals(const Ring& R, unsigned gen_cap) {
    if (!R->is_finite()) throw std::domain_error("ideal enumeration needs a finite ring");
    auto all = enumerate_elements(R);
    std::map<std::string, Ideal> seen;
    auto consider = [&](const std::vector<RingElement>& gens) {
        Ideal I = span(R, gens);
        seen.emplace(I->key(), I);
    };
    consider({});
    std::vector<size_t> idx;
    // all subsets of size <= gen_cap, via nested index combinations
    std::function<void(size_t, unsigned)> rec = [&](size_t start, unsigned left) {
        if (left == 0) return;
        for (size_t i = start; i < all.size(); ++i) {
            idx.push_back(i);
            std::vector<RingElement> gens;
            for (size_t j : idx) gens.push_back(all[j]);
            consider(gens);
            rec(i + 1, left - 1);
            idx.pop_back();
        }
    };
    rec(0, gen_cap);

    std::vector<Ideal> out;
    for (auto& [_, I] : seen) out.push_back(I);
    std::sort(out.begin(), out.end(), [](const Ideal& a, const Ideal& b) {
        size_t na = ideal_elements(a).size(), nb = ideal_elements(b).size();
        if (na != nb) return na < nb;
        return a->key() < b->key();
    });
    return out;
}

bool ideal_enumeration_complete(const Ring& R, const std::vector<Ideal>& list) {
    std::set<std::string> keys;
    for (const auto& I : list) keys.insert(I->key());
    // every principal ideal present
    for (const auto& a : enumerate_elements(R))
        if (!keys.count(span(R, {a})->key())) return false;
    // closed under pairwise sums; with the above this reaches every ideal of a
    // finite ring (each is a finite sum of principal ideals)
    for (const auto& I : list)
        for (const auto& J : list)
            if (!keys.count(ideal_sum(I, J)->key())) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Homomorphisms

namespace {

RingElement apply_projection(const RingHomData& f, const RingElement& x) {
    const Ring& S = f.source;
    const Ring& T = f.target;
    switch (S->family) {
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic: return from_int(T, x.residue());
    case RingFamily::MonomialQuotient: {
        bool poly_target = T->family == RingFamily::MonomialQuotient;
        PolyMap out;
        BigRat constant = 0;
        for (const auto& [ev, c] : x.poly()) {
            ExpVec mapped(poly_target ? T->vars.size() : 0, 0);
            bool dead = false;
            for (size_t i = 0; i < ev.size(); ++i) {
                if (f.var_map[i] < 0) {
                    if (ev[i] > 0) { dead = true; break; } // variable killed by J
                } else if (ev[i] >= f.new_caps[i]) {
                    dead = true;
                    break;
                } else {
                    mapped[static_cast<size_t>(f.var_map[i])] = ev[i];
                }
            }
            if (dead) continue;
            if (poly_target) {
                auto [it, inserted] = out.emplace(std::move(mapped), c);
                if (!inserted) it->second += c;
            } else {
                constant += c;
            }
        }
        if (poly_target) return RingElement::make(T, std::move(out));
        if (T->family == RingFamily::Rationals) return RingElement::make(T, constant);
        return from_int(T, numerator(constant));
    }
    default: break;
    }
    throw std::logic_error("projection from unsupported family");
}

} // namespace

RingElement hom_apply(const RingHom& f, const RingElement& x) {
    if (!same_ring(f->source, x.ring())) fail("hom applied outside its source ring");
    switch (f->kind) {
    case HomKind::Identity: return x;
    case HomKind::ModReduction:
    case HomKind::PadicPrecisionDrop: return from_int(f->target, x.residue());
    case HomKind::QuotientProjection: return apply_projection(*f, x);
    case HomKind::Composite: return hom_apply(f->second, hom_apply(f->first, x));
    }
    throw std::logic_error("bad hom kind");
}

namespace {

// Ring-hom laws on the whole finite source, or a seeded sample when the
// source is large.  Construction-time guard; violations are internal bugs.
void validate_hom(const RingHom& f) {
    const Ring& S = f->source;
    if (!S->is_finite()) return;
    if (!hom_apply(f, ring_zero(S)).is_zero() || !hom_apply(f, ring_one(S)).is_one())
        throw std::logic_error("hom does not preserve 0/1");
    std::vector<RingElement> pool = enumerate_elements(S);
    if (S->cardinality().value() > 64) {
        std::mt19937_64 rng(0x40Au);
        pool.clear();
        for (int i = 0; i < 64; ++i) pool.push_back(sample_element(S, rng));
    }
    for (const auto& a : pool)
        for (const auto& b : pool) {
            if (hom_apply(f, a + b) != hom_apply(f, a) + hom_apply(f, b))
                throw std::logic_error("hom does not preserve +");
            if (hom_apply(f, a * b) != hom_apply(f, a) * hom_apply(f, b))
                throw std::logic_error("hom does not preserve *");
        }
}

RingHom finish(std::shared_ptr<RingHomData> d) {
    RingHom f = d;
    validate_hom(f);
    return f;
}

} // namespace

RingHom hom_identity(const Ring& R) {
    auto d = std::make_shared<RingHomData>();
    d->kind = HomKind::Identity;
    d->source = d->target = R;
    return finish(d);
}

RingHom hom_mod_reduction(const Ring& source, const Ring& target) {
    if (source->family != RingFamily::IntegersMod || target->family != RingFamily::IntegersMod)
        fail("mod reduction needs Z/m rings");
    if (source->modulus % target->modulus != 0)
        fail("mod reduction target modulus must divide source modulus");
    auto d = std::make_shared<RingHomData>();
    d->kind = HomKind::ModReduction;
    d->source = source;
    d->target = target;
    return finish(d);
}

RingHom hom_precision_drop(const Ring& source, unsigned M) {
    if (source->family != RingFamily::TruncatedPadic) fail("precision drop needs a p-adic ring");
    if (M < 1 || M > source->precision) fail("precision drop out of range");
    auto d = std::make_shared<RingHomData>();
    d->kind = HomKind::PadicPrecisionDrop;
    d->source = source;
    d->target = ring_truncated_padic(source->prime, M);
    return finish(d);
}

RingHom hom_compose(const RingHom& inner, const RingHom& outer) {
    if (!same_ring(inner->target, outer->source)) fail("hom composition mismatch");
    auto d = std::make_shared<RingHomData>();
    d->kind = HomKind::Composite;
    d->source = inner->source;
    d->target = outer->target;
    d->first = inner;
    d->second = outer;
    return finish(d);
}

bool hom_is_identity_like(const RingHom& f) {
    if (f->kind == HomKind::Identity) return true;
    if (f->kind == HomKind::Composite)
        return hom_is_identity_like(f->first) && hom_is_identity_like(f->second);
    return false;
}

std::vector<RingElement> hom_kernel_elements(const RingHom& f) {
    if (f->source->is_finite()) {
        std::vector<RingElement> out;
        for (const auto& a : enumerate_elements(f->source))
            if (hom_apply(f, a).is_zero()) out.push_back(a);
        return out;
    }
    if (hom_is_identity_like(f)) return {ring_zero(f->source)};
    throw std::domain_error("kernel enumeration needs a finite source");
}

Ideal hom_kernel(const RingHom& f) {
    switch (f->kind) {
    case HomKind::Identity: return zero_ideal(f->source);
    case HomKind::ModReduction:
        return span(f->source, {from_int(f->source, f->target->modulus)});
    case HomKind::PadicPrecisionDrop:
        return span(f->source,
                    {from_int(f->source, int_pow(f->source->prime, f->target->precision))});
    case HomKind::QuotientProjection: return f->proj_ideal;
    case HomKind::Composite: return span(f->source, hom_kernel_elements(f));
    }
    throw std::logic_error("bad hom kind");
}

bool hom_injective(const RingHom& f) {
    if (hom_is_identity_like(f)) return true;
    return hom_kernel(f)->is_zero();
}

bool hom_surjective(const RingHom& f) {
    if (hom_is_identity_like(f)) return true;
    if (!f->source->is_finite())
        throw std::domain_error("surjectivity check needs a finite source");
    std::set<RingElement> image;
    for (const auto& a : enumerate_elements(f->source)) image.insert(hom_apply(f, a));
    return BigInt(image.size()) == f->target->cardinality().value();
}

Ideal hom_image_ideal(const RingHom& f, const Ideal& I) {
    if (!same_ring(f->source, I->ring)) fail("image of an ideal from a different ring");
    std::vector<RingElement> gens;
    for (const auto& g : I->generators) gens.push_back(hom_apply(f, g));
    return span(f->target, gens);
}

// ---------------------------------------------------------------------------
// Quotient rings (recognized patterns)

namespace {

void check_equal_fibers(const Ring& R, const Ring& Q, const RingHom& f) {
    if (!R->is_finite()) return;
    std::map<std::string, BigInt> fiber;
    for (const auto& a : enumerate_elements(R)) ++fiber[hom_apply(f, a).str()];
    if (BigInt(fiber.size()) != Q->cardinality().value())
        throw std::logic_error("quotient projection is not surjective");
    const BigInt expect = R->cardinality().value() / Q->cardinality().value();
    for (const auto& [_, n] : fiber)
        if (n != expect) throw std::logic_error("quotient fibers differ in size");
}

std::pair<Ring, RingHom> monomial_quotient_ring(const Ring& R, const Ideal& J) {
    // Recognize J as a variable-power ideal (x_i^{t_i} : i), possibly after
    // re-deriving the thresholds from the element set.
    std::vector<unsigned> t(R->vars.size());
    for (size_t i = 0; i < t.size(); ++i) t[i] = R->caps[i]; // no constraint
    bool pattern = true;
    auto record = [&](const ExpVec& e) {
        size_t hits = 0, var = 0;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) { ++hits; var = i; }
        if (hits != 1) { pattern = false; return; }
        t[var] = std::min(t[var], e[var]);
    };
    if (R->is_finite()) {
        for (size_t i = 0; i < t.size(); ++i) {
            for (unsigned k = 1; k < R->caps[i]; ++k) {
                ExpVec e(R->vars.size(), 0);
                e[i] = k;
                if (mem(J, monomial_element(R, e))) { t[i] = k; break; }
            }
        }
        // the thresholds must reproduce J exactly
        std::vector<RingElement> gens;
        for (size_t i = 0; i < t.size(); ++i)
            if (t[i] < R->caps[i]) {
                ExpVec e(R->vars.size(), 0);
                e[i] = t[i];
                gens.push_back(monomial_element(R, e));
            }
        if (!ideal_eq(span(R, gens), J)) pattern = false;
    } else {
        for (const auto& e : J->mono_gens) record(e);
    }
    if (!pattern)
        fail("unsupported quotient pattern: " + R->description() +
             " by an ideal that is not generated by variable powers");

    auto d = std::make_shared<RingHomData>();
    d->kind = HomKind::QuotientProjection;
    d->source = R;
    d->proj_ideal = J;
    d->var_map.assign(R->vars.size(), -1);
    d->new_caps = t;
    std::vector<std::string> vars;
    std::vector<unsigned> caps;
    for (size_t i = 0; i < t.size(); ++i)
        if (t[i] >= 2) {
            d->var_map[i] = static_cast<int>(vars.size());
            vars.push_back(R->vars[i]);
            caps.push_back(t[i]);
        }
    if (vars.empty()) {
        d->target = R->base_family == RingFamily::Rationals ? ring_rationals()
                                                            : ring_integers_mod(R->base_modulus);
    } else {
        Ring base = R->base_family == RingFamily::Rationals ? ring_rationals()
                                                            : ring_integers_mod(R->base_modulus);
        d->target = ring_monomial_quotient(base, vars, caps);
    }
    RingHom f = d;
    validate_hom(f);
    return {f->target, f};
}

} // namespace

std::pair<Ring, RingHom> quotient_ring(const Ring& R, const Ideal& J) {
    if (!same_ring(R, J->ring)) fail("quotient by an ideal of a different ring");
    if (J->is_whole())
        fail("unsupported quotient pattern: quotient by (1) is the zero ring");
    if (J->is_zero()) return {R, hom_identity(R)};

    std::pair<Ring, RingHom> result = [&]() -> std::pair<Ring, RingHom> {
        switch (R->family) {
        case RingFamily::IntegersMod: {
            Ring T = ring_integers_mod(J->residue_gen); // d >= 2 since J proper, nonzero
            return {T, hom_mod_reduction(R, T)};
        }
        case RingFamily::TruncatedPadic: {
            RingHom f = hom_precision_drop(R, J->padic_threshold);
            return {f->target, f};
        }
        case RingFamily::MonomialQuotient: return monomial_quotient_ring(R, J);
        case RingFamily::Rationals: break;
        }
        fail("unsupported quotient pattern for ring " + R->description());
    }();

    check_equal_fibers(R, result.first, result.second);
    return result;
}

} // namespace dpv
