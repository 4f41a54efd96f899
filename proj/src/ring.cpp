#include "dpv/ring.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace dpv {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

BigInt parse_bigint(const std::string& s) {
    if (s.empty()) fail("empty integer literal");
    bool neg = s[0] == '-';
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) fail("bad integer literal: " + s);
    for (size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            fail("bad integer literal: " + s);
    BigInt v(s.substr(i));
    return neg ? BigInt(-v) : v;
}

} // namespace

bool RingContext::is_finite() const {
    switch (family) {
    case RingFamily::Rationals: return false;
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic: return true;
    case RingFamily::MonomialQuotient: return base_family == RingFamily::IntegersMod;
    }
    return false;
}

std::optional<BigInt> RingContext::cardinality() const {
    switch (family) {
    case RingFamily::Rationals: return std::nullopt;
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic: return modulus;
    case RingFamily::MonomialQuotient: {
        if (base_family != RingFamily::IntegersMod) return std::nullopt;
        BigInt positions = 1;
        for (unsigned c : caps) positions *= c;
        BigInt card = 1;
        for (BigInt i = 0; i < positions; ++i) card *= base_modulus;
        return card;
    }
    }
    return std::nullopt;
}

bool RingContext::is_rational_algebra() const {
    return family == RingFamily::Rationals ||
           (family == RingFamily::MonomialQuotient && base_family == RingFamily::Rationals);
}

std::string RingContext::description() const {
    switch (family) {
    case RingFamily::Rationals: return "Q";
    case RingFamily::IntegersMod: return "Z/" + modulus.str();
    case RingFamily::TruncatedPadic: return "Zp:" + prime.str() + "^" + std::to_string(precision);
    case RingFamily::MonomialQuotient: {
        std::string base = base_family == RingFamily::Rationals ? "Q" : "Z/" + base_modulus.str();
        std::string out = base + "[";
        for (size_t i = 0; i < vars.size(); ++i) {
            if (i) out += ",";
            out += vars[i] + ":" + std::to_string(caps[i]);
        }
        return out + "]";
    }
    }
    return "?";
}

Ring ring_rationals() {
    auto R = std::make_shared<RingContext>();
    R->family = RingFamily::Rationals;
    return R;
}

Ring ring_integers_mod(const BigInt& m) {
    if (m < 2) fail("IntegersMod requires modulus >= 2");
    auto R = std::make_shared<RingContext>();
    R->family = RingFamily::IntegersMod;
    R->modulus = m;
    return R;
}

Ring ring_truncated_padic(const BigInt& p, unsigned precision) {
    if (!is_prime(p)) fail("TruncatedPadic requires a prime");
    if (precision < 1) fail("TruncatedPadic requires precision >= 1");
    auto R = std::make_shared<RingContext>();
    R->family = RingFamily::TruncatedPadic;
    R->prime = p;
    R->precision = precision;
    R->modulus = int_pow(p, precision);
    return R;
}

Ring ring_monomial_quotient(const Ring& base, std::vector<std::string> vars,
                            std::vector<unsigned> caps) {
    if (!base) fail("null base ring");
    if (base->family != RingFamily::Rationals && base->family != RingFamily::IntegersMod)
        fail("MonomialQuotient base must be Q or Z/m");
    if (vars.empty() || vars.size() != caps.size()) fail("MonomialQuotient needs vars with caps");
    for (unsigned c : caps)
        if (c < 1) fail("MonomialQuotient caps must be >= 1");
    auto R = std::make_shared<RingContext>();
    R->family = RingFamily::MonomialQuotient;
    R->base_family = base->family;
    R->base_modulus = base->modulus;
    R->vars = std::move(vars);
    R->caps = std::move(caps);
    return R;
}

Ring parse_ring(const std::string& spec) {
    auto bracket = spec.find('[');
    std::string head = bracket == std::string::npos ? spec : spec.substr(0, bracket);

    Ring base;
    if (head == "Q") {
        base = ring_rationals();
    } else if (head.rfind("Z/", 0) == 0) {
        base = ring_integers_mod(parse_bigint(head.substr(2)));
    } else if (head.rfind("Zp:", 0) == 0) {
        auto caret = head.find('^');
        if (caret == std::string::npos) fail("Zp spec needs p^N: " + spec);
        BigInt p = parse_bigint(head.substr(3, caret - 3));
        BigInt N = parse_bigint(head.substr(caret + 1));
        if (N < 1 || N > 64) fail("unreasonable padic precision: " + spec);
        return ring_truncated_padic(p, static_cast<unsigned>(N));
    } else {
        fail("unknown ring family: " + spec);
    }

    if (bracket == std::string::npos) return base;
    if (spec.back() != ']') fail("unterminated variable list: " + spec);

    std::vector<std::string> vars;
    std::vector<unsigned> caps;
    std::string body = spec.substr(bracket + 1, spec.size() - bracket - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) fail("variable needs a cap, e.g. x:2: " + spec);
        BigInt cap = parse_bigint(item.substr(colon + 1));
        if (cap < 1 || cap > 64) fail("unreasonable exponent cap: " + spec);
        vars.push_back(item.substr(0, colon));
        caps.push_back(static_cast<unsigned>(cap));
    }
    return ring_monomial_quotient(base, std::move(vars), std::move(caps));
}

bool same_ring(const Ring& a, const Ring& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->family != b->family) return false;
    switch (a->family) {
    case RingFamily::Rationals: return true;
    case RingFamily::IntegersMod: return a->modulus == b->modulus;
    case RingFamily::TruncatedPadic: return a->prime == b->prime && a->precision == b->precision;
    case RingFamily::MonomialQuotient:
        return a->base_family == b->base_family && a->base_modulus == b->base_modulus &&
               a->vars == b->vars && a->caps == b->caps;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Canonical forms

namespace {

void canonicalize_poly(const RingContext& R, PolyMap& p) {
    for (auto it = p.begin(); it != p.end();) {
        bool dead = false;
        for (size_t i = 0; i < R.caps.size(); ++i)
            if (it->first[i] >= R.caps[i]) { dead = true; break; }
        if (!dead && R.base_family == RingFamily::IntegersMod) {
            if (denominator(it->second) != 1)
                throw std::logic_error("fractional coefficient over Z/m base");
            BigInt r = mod_floor(numerator(it->second), R.base_modulus);
            it->second = BigRat(r);
        }
        if (dead || it->second == 0)
            it = p.erase(it);
        else
            ++it;
    }
}

} // namespace

RingElement RingElement::make(Ring R, std::variant<BigRat, BigInt, PolyMap> payload) {
    RingElement e;
    e.ring_ = std::move(R);
    switch (e.ring_->family) {
    case RingFamily::Rationals:
        // cpp_rational is kept reduced with positive denominator by construction
        break;
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic:
        payload = mod_floor(std::get<BigInt>(payload), e.ring_->modulus);
        break;
    case RingFamily::MonomialQuotient: {
        auto& p = std::get<PolyMap>(payload);
        for (const auto& [ev, _] : p)
            if (ev.size() != e.ring_->vars.size())
                throw std::logic_error("exponent vector width mismatch");
        canonicalize_poly(*e.ring_, p);
        break;
    }
    }
    e.payload_ = std::move(payload);
    return e;
}

RingElement ring_zero(const Ring& R) { return from_int(R, 0); }
RingElement ring_one(const Ring& R) { return from_int(R, 1); }

RingElement from_int(const Ring& R, const BigInt& n) {
    switch (R->family) {
    case RingFamily::Rationals: return RingElement::make(R, BigRat(n));
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic: return RingElement::make(R, n);
    case RingFamily::MonomialQuotient: {
        PolyMap p;
        if (n != 0) p.emplace(ExpVec(R->vars.size(), 0), BigRat(n));
        return RingElement::make(R, std::move(p));
    }
    }
    fail("bad ring");
}

RingElement from_rational(const Ring& R, const BigRat& q) {
    if (!R->is_rational_algebra()) fail("from_rational: ring is not a Q-algebra");
    if (R->family == RingFamily::Rationals) return RingElement::make(R, q);
    PolyMap p;
    if (q != 0) p.emplace(ExpVec(R->vars.size(), 0), q);
    return RingElement::make(R, std::move(p));
}

bool RingElement::is_zero() const {
    switch (ring_->family) {
    case RingFamily::Rationals: return rat() == 0;
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic: return residue() == 0;
    case RingFamily::MonomialQuotient: return poly().empty();
    }
    return false;
}

bool RingElement::is_one() const { return *this == ring_one(ring_); }

RingElement RingElement::operator-() const {
    switch (ring_->family) {
    case RingFamily::Rationals: return make(ring_, BigRat(-rat()));
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic: return make(ring_, BigInt(-residue()));
    case RingFamily::MonomialQuotient: {
        PolyMap p = poly();
        for (auto& [_, c] : p) c = -c;
        return make(ring_, std::move(p));
    }
    }
    fail("bad ring");
}

namespace {

void require_same_ring(const RingElement& a, const RingElement& b) {
    if (!a.valid() || !b.valid() || !same_ring(a.ring(), b.ring()))
        throw std::invalid_argument("ring mismatch between operands");
}

} // namespace

RingElement operator+(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    switch (a.ring()->family) {
    case RingFamily::Rationals: return RingElement::make(a.ring(), BigRat(a.rat() + b.rat()));
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic:
        return RingElement::make(a.ring(), BigInt(a.residue() + b.residue()));
    case RingFamily::MonomialQuotient: {
        PolyMap p = a.poly();
        for (const auto& [ev, c] : b.poly()) {
            auto [it, inserted] = p.emplace(ev, c);
            if (!inserted) it->second += c;
        }
        return RingElement::make(a.ring(), std::move(p));
    }
    }
    fail("bad ring");
}

RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

RingElement operator*(const RingElement& a, const RingElement& b) {
    require_same_ring(a, b);
    switch (a.ring()->family) {
    case RingFamily::Rationals: return RingElement::make(a.ring(), BigRat(a.rat() * b.rat()));
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic:
        return RingElement::make(a.ring(), BigInt(a.residue() * b.residue()));
    case RingFamily::MonomialQuotient: {
        const auto& caps = a.ring()->caps;
        PolyMap p;
        for (const auto& [ea, ca] : a.poly())
            for (const auto& [eb, cb] : b.poly()) {
                ExpVec ev(ea.size());
                bool dead = false;
                for (size_t i = 0; i < ev.size(); ++i) {
                    ev[i] = ea[i] + eb[i];
                    if (ev[i] >= caps[i]) { dead = true; break; }
                }
                if (dead) continue;
                auto [it, inserted] = p.emplace(std::move(ev), ca * cb);
                if (!inserted) it->second += ca * cb;
            }
        return RingElement::make(a.ring(), std::move(p));
    }
    }
    fail("bad ring");
}

bool RingElement::operator==(const RingElement& o) const {
    require_same_ring(*this, o);
    return payload_ == o.payload_;
}

int RingElement::cmp(const RingElement& o) const {
    require_same_ring(*this, o);
    switch (ring_->family) {
    case RingFamily::Rationals:
        return rat() < o.rat() ? -1 : rat() == o.rat() ? 0 : 1;
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic:
        return residue() < o.residue() ? -1 : residue() == o.residue() ? 0 : 1;
    case RingFamily::MonomialQuotient: {
        auto ia = poly().begin(), ib = o.poly().begin();
        for (; ia != poly().end() && ib != o.poly().end(); ++ia, ++ib) {
            if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
            if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
        }
        if (ia != poly().end()) return 1;
        if (ib != o.poly().end()) return -1;
        return 0;
    }
    }
    return 0;
}

RingElement ring_pow(const RingElement& a, unsigned e) {
    RingElement r = ring_one(a.ring());
    RingElement base = a;
    while (e) {
        if (e & 1u) r = r * base;
        if (e >>= 1u) base = base * base;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Units, nilpotency, characteristic

RingElement ring_inverse(const RingElement& a) {
    const Ring& R = a.ring();
    switch (R->family) {
    case RingFamily::Rationals:
        if (a.rat() == 0) return ring_zero(R);
        return RingElement::make(R, BigRat(1) / a.rat());
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic: {
        BigInt inv;
        if (!mod_inverse(a.residue(), R->modulus, inv)) return ring_zero(R);
        return RingElement::make(R, std::move(inv));
    }
    case RingFamily::MonomialQuotient: {
        // a = c + h with h of positive order (nilpotent): a is a unit iff c is
        // a unit in the base; then a^{-1} = c^{-1} * sum_k (-c^{-1} h)^k.
        auto it = a.poly().find(ExpVec(R->vars.size(), 0));
        if (it == a.poly().end()) return ring_zero(R);
        BigRat c = it->second;
        BigRat cinv;
        if (R->base_family == RingFamily::Rationals) {
            cinv = BigRat(1) / c;
        } else {
            BigInt ci;
            if (!mod_inverse(numerator(c), R->base_modulus, ci)) return ring_zero(R);
            cinv = BigRat(ci);
        }
        RingElement cinv_el = RingElement::make(
            R, PolyMap{{ExpVec(R->vars.size(), 0), cinv}});
        RingElement u = cinv_el * a - ring_one(R); // nilpotent
        unsigned max_order = 1;
        for (unsigned cap : R->caps) max_order += cap - 1;
        RingElement acc = ring_one(R), term = ring_one(R);
        for (unsigned k = 1; k <= max_order && !term.is_zero(); ++k) {
            term = term * (-u);
            acc = acc + term;
        }
        RingElement inv = cinv_el * acc;
        if (!(inv * a).is_one()) throw std::logic_error("geometric-series inverse failed");
        return inv;
    }
    }
    fail("bad ring");
}

unsigned padic_val(const RingElement& a) {
    const Ring& R = a.ring();
    if (R->family != RingFamily::TruncatedPadic)
        throw std::invalid_argument("padic_val: not a truncated p-adic ring");
    if (a.residue() == 0) return R->precision; // means ">= N"
    return padic_valuation(a.residue(), R->prime);
}

NilpotencyResult is_nilpotent(const RingElement& a, unsigned bound) {
    if (bound < 1) throw std::invalid_argument("is_nilpotent: bound must be >= 1");
    const Ring& R = a.ring();
    if (R->family == RingFamily::Rationals) {
        if (a.is_zero()) return {Nilpotency::Yes, 1, bound};
        return {Nilpotency::No, 0, bound};
    }
    if (R->family == RingFamily::MonomialQuotient &&
        R->base_family == RingFamily::Rationals) {
        // Exact: nilpotent iff the constant term vanishes.
        if (a.poly().count(ExpVec(R->vars.size(), 0))) return {Nilpotency::No, 0, bound};
    }
    RingElement p = a;
    for (unsigned k = 1; k <= bound; ++k) {
        if (p.is_zero()) return {Nilpotency::Yes, k, bound};
        p = p * a;
    }
    return {Nilpotency::No, 0, bound};
}

BigInt characteristic(const Ring& R) {
    switch (R->family) {
    case RingFamily::Rationals: return 0;
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic: return R->modulus;
    case RingFamily::MonomialQuotient:
        return R->base_family == RingFamily::Rationals ? BigInt(0) : R->base_modulus;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Enumeration and sampling

namespace {

std::vector<ExpVec> capped_exponents(const RingContext& R) {
    std::vector<ExpVec> out;
    ExpVec cur(R.caps.size(), 0);
    for (;;) {
        out.push_back(cur);
        size_t i = cur.size();
        for (;;) {
            --i;
            if (++cur[i] < R.caps[i]) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
    }
}

} // namespace

std::vector<RingElement> enumerate_elements(const Ring& R) {
    if (!R->is_finite()) throw std::domain_error("infinite ring: " + R->description());
    std::vector<RingElement> out;
    switch (R->family) {
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic:
        for (BigInt i = 0; i < R->modulus; ++i) out.push_back(from_int(R, i));
        return out;
    case RingFamily::MonomialQuotient: {
        auto positions = capped_exponents(*R);
        const BigInt m = R->base_modulus;
        std::vector<BigInt> digits(positions.size(), 0);
        for (;;) {
            PolyMap p;
            for (size_t i = 0; i < positions.size(); ++i)
                if (digits[i] != 0) p.emplace(positions[i], BigRat(digits[i]));
            out.push_back(RingElement::make(R, std::move(p)));
            size_t i = 0;
            while (i < digits.size()) {
                if (++digits[i] < m) break;
                digits[i] = 0;
                ++i;
            }
            if (i == digits.size()) return out;
        }
    }
    default: break;
    }
    throw std::domain_error("infinite ring: " + R->description());
}

RingElement sample_element(const Ring& R, std::mt19937_64& rng) {
    auto small = [&rng](long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    };
    switch (R->family) {
    case RingFamily::Rationals:
        return RingElement::make(
            ring_rationals(), BigRat(small(-20, 20)) / BigRat(small(1, 20)));
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic: {
        BigInt m = R->modulus;
        // Catalog moduli are small; a 63-bit draw keeps this uniform.
        auto v = std::uniform_int_distribution<long long>(
            0, static_cast<long long>(m) - 1)(rng);
        return from_int(R, v);
    }
    case RingFamily::MonomialQuotient: {
        auto positions = capped_exponents(*R);
        PolyMap p;
        for (const auto& ev : positions) {
            if (small(0, 2) != 0) continue; // sparse
            BigRat c = R->base_family == RingFamily::Rationals
                           ? BigRat(small(-9, 9)) / BigRat(small(1, 6))
                           : BigRat(mod_floor(small(0, 1000), R->base_modulus));
            if (c != 0) p.emplace(ev, c);
        }
        return RingElement::make(R, std::move(p));
    }
    }
    fail("bad ring");
}

// ---------------------------------------------------------------------------
// Text forms

namespace {

std::string rat_str(const BigRat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string monomial_str(const RingContext& R, const ExpVec& ev) {
    std::string s;
    for (size_t i = 0; i < ev.size(); ++i) {
        if (ev[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += R.vars[i];
        if (ev[i] > 1) s += "^" + std::to_string(ev[i]);
    }
    return s;
}

// Tokenizer/parser for polynomial literals like "1 + 2*x*y - 1/2*x^2".
struct PolyParser {
    const Ring& R;
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }

    BigRat parse_number() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected number in '" + text + "' at " + std::to_string(pos));
        BigInt num(text.substr(start, pos - start));
        if (eat('/')) {
            skip_ws();
            size_t dstart = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (dstart == pos) fail("expected denominator in '" + text + "'");
            BigInt den(text.substr(dstart, pos - dstart));
            if (den == 0) fail("zero denominator in '" + text + "'");
            return BigRat(num) / BigRat(den);
        }
        return BigRat(num);
    }

    std::string parse_ident() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        return text.substr(start, pos - start);
    }

    // term := factor ( '*'? factor )*
    RingElement parse_term() {
        RingElement acc = ring_one(R);
        bool first = true;
        for (;;) {
            skip_ws();
            if (pos >= text.size()) break;
            char c = text[pos];
            if (c == '+' || c == '-') break;
            if (c == '*') {
                ++pos;
                skip_ws();
                c = pos < text.size() ? text[pos] : '\0';
            } else if (!first) {
                if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_' &&
                    !std::isdigit(static_cast<unsigned char>(c)))
                    break;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                acc = acc * from_rational_checked(parse_number());
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name = parse_ident();
                auto vit = std::find(R->vars.begin(), R->vars.end(), name);
                if (vit == R->vars.end()) fail("unknown variable '" + name + "' in ring " + R->description());
                unsigned exp = 1;
                if (eat('^')) {
                    BigRat e = parse_number();
                    if (denominator(e) != 1 || numerator(e) < 0) fail("bad exponent in '" + text + "'");
                    exp = static_cast<unsigned>(numerator(e));
                }
                ExpVec ev(R->vars.size(), 0);
                ev[static_cast<size_t>(vit - R->vars.begin())] = exp;
                PolyMap p;
                // exponent at/above the cap reduces to zero
                if (exp < R->caps[static_cast<size_t>(vit - R->vars.begin())])
                    p.emplace(std::move(ev), BigRat(1));
                acc = acc * RingElement::make(R, std::move(p));
            } else {
                fail("unexpected character '" + std::string(1, c) + "' in '" + text + "'");
            }
            first = false;
        }
        if (first) fail("empty term in '" + text + "'");
        return acc;
    }

    RingElement from_rational_checked(const BigRat& q) {
        if (R->base_family == RingFamily::IntegersMod && denominator(q) != 1)
            fail("rational coefficient over Z/m base in '" + text + "'");
        PolyMap p;
        if (q != 0) p.emplace(ExpVec(R->vars.size(), 0), q);
        return RingElement::make(R, std::move(p));
    }

    RingElement parse() {
        RingElement acc = ring_zero(R);
        bool negate = false;
        skip_ws();
        if (eat('-')) negate = true;
        else eat('+');
        for (;;) {
            RingElement t = parse_term();
            acc = negate ? acc - t : acc + t;
            skip_ws();
            if (pos >= text.size()) return acc;
            if (eat('-')) negate = true;
            else if (eat('+')) negate = false;
            else fail("trailing input in '" + text + "' at " + std::to_string(pos));
        }
    }
};

} // namespace

std::string RingElement::str() const {
    switch (ring_->family) {
    case RingFamily::Rationals: return rat_str(rat());
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic: return residue().str();
    case RingFamily::MonomialQuotient: {
        if (poly().empty()) return "0";
        std::string out;
        for (const auto& [ev, c] : poly()) {
            BigRat coeff = c;
            if (out.empty()) {
                if (coeff < 0) { out += "-"; coeff = -coeff; }
            } else {
                out += coeff < 0 ? " - " : " + ";
                if (coeff < 0) coeff = -coeff;
            }
            std::string mono = monomial_str(*ring_, ev);
            if (mono.empty()) out += rat_str(coeff);
            else if (coeff == 1) out += mono;
            else out += rat_str(coeff) + "*" + mono;
        }
        return out;
    }
    }
    return "?";
}

RingElement parse_element(const Ring& R, const std::string& text) {
    switch (R->family) {
    case RingFamily::Rationals: {
        bool neg = false;
        std::string t = text;
        size_t i = 0;
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
        if (i < t.size() && (t[i] == '-' || t[i] == '+')) { neg = t[i] == '-'; ++i; }
        auto slash = t.find('/', i);
        BigInt num, den = 1;
        if (slash == std::string::npos) {
            num = parse_bigint(t.substr(i));
        } else {
            num = parse_bigint(t.substr(i, slash - i));
            den = parse_bigint(t.substr(slash + 1));
            if (den == 0) fail("zero denominator: " + text);
        }
        BigRat q = BigRat(num) / BigRat(den);
        return RingElement::make(R, neg ? BigRat(-q) : q);
    }
    case RingFamily::IntegersMod:
    case RingFamily::TruncatedPadic:
        return from_int(R, parse_bigint(text));
    case RingFamily::MonomialQuotient: {
        PolyParser p{R, text};
        RingElement e = p.parse();
        return e;
    }
    }
    fail("bad ring");
}

} // namespace dpv
