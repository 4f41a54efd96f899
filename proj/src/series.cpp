#include "dpv/series.hpp"

#include <algorithm>
#include <sstream>

namespace dpv {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_window(const Series& a, const Series& b, const char* op) {
    if (!same_window(a, b))
        fail(std::string(op) + ": series windows differ (ring, variables, or cap)");
}

void check_arity(const Series& f, const ExpVec& m) {
    if (m.size() != f.vars.size())
        fail("exponent vector arity " + std::to_string(m.size()) + " does not match " +
             std::to_string(f.vars.size()) + " variables");
}

void put(Series& f, const ExpVec& m, RingElement c) {
    if (c.is_zero()) return;
    auto it = f.coeffs.find(m);
    if (it == f.coeffs.end()) {
        f.coeffs.emplace(m, std::move(c));
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) f.coeffs.erase(it);
}

} // namespace

unsigned total_degree(const ExpVec& m) {
    unsigned d = 0;
    for (unsigned e : m) d += e;
    return d;
}

Series series_zero(const Ring& R, std::vector<std::string> vars, unsigned cap) {
    Series f;
    f.ring = R;
    f.vars = std::move(vars);
    f.cap = cap;
    return f;
}

Series series_const(const Ring& R, std::vector<std::string> vars, unsigned cap,
                    const RingElement& c) {
    Series f = series_zero(R, std::move(vars), cap);
    put(f, ExpVec(f.vars.size(), 0), c);
    return f;
}

Series series_one(const Ring& R, std::vector<std::string> vars, unsigned cap) {
    return series_const(R, std::move(vars), cap, ring_one(R));
}

Series series_monomial(const Ring& R, std::vector<std::string> vars, unsigned cap,
                       const ExpVec& m, const RingElement& c) {
    Series f = series_zero(R, std::move(vars), cap);
    check_arity(f, m);
    if (total_degree(m) > cap)
        throw std::out_of_range("monomial degree " + std::to_string(total_degree(m)) +
                                " exceeds the cap " + std::to_string(cap));
    if (!same_ring(c.ring(), R)) fail("coefficient from a different ring");
    put(f, m, c);
    return f;
}

Series series_var(const Ring& R, std::vector<std::string> vars, unsigned cap, size_t which) {
    if (which >= vars.size()) fail("variable index out of range");
    if (cap < 1) throw std::out_of_range("cap 0 cannot hold a variable");
    ExpVec m(vars.size(), 0);
    m[which] = 1;
    return series_monomial(R, std::move(vars), cap, m, ring_one(R));
}

Series series_from_terms(const Ring& R, std::vector<std::string> vars, unsigned cap,
                         const std::vector<std::pair<ExpVec, RingElement>>& terms) {
    Series f = series_zero(R, std::move(vars), cap);
    for (const auto& [m, c] : terms) {
        check_arity(f, m);
        if (total_degree(m) > cap)
            throw std::out_of_range("term degree " + std::to_string(total_degree(m)) +
                                    " exceeds the cap " + std::to_string(cap));
        if (!same_ring(c.ring(), R)) fail("coefficient from a different ring");
        put(f, m, c);
    }
    return f;
}

ExpVec parse_exp_vec(const std::string& text, size_t arity) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char ch) { return ch == ' '; }), s.end());
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        fail("exponent vector must look like (1,0): " + text);
    s = s.substr(1, s.size() - 2);
    ExpVec m;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            fail("bad exponent entry '" + part + "' in " + text);
        m.push_back(static_cast<unsigned>(std::stoul(part)));
    }
    if (m.size() != arity)
        fail("exponent vector " + text + " has arity " + std::to_string(m.size()) +
             ", expected " + std::to_string(arity));
    return m;
}

Series parse_series(const Ring& R, const std::string& var, unsigned cap,
                    const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char ch) { return ch == ' '; }), s.end());
    if (s.empty()) fail("empty series literal");

    Series f = series_zero(R, {var}, cap);
    size_t i = 0;
    while (i < s.size()) {
        bool neg = false;
        if (s[i] == '+' || s[i] == '-') {
            neg = s[i] == '-';
            ++i;
            if (i == s.size()) fail("dangling sign in series literal: " + text);
        }
        // number part (integer or a/b), then optional *, then optional var^exp
        size_t start = i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/'))
            ++i;
        std::string numtext(s, start, i - start);
        bool starred = i < s.size() && s[i] == '*';
        if (starred) ++i;

        unsigned expo = 0;
        if (i < s.size() && s[i] != '+' && s[i] != '-') {
            size_t vstart = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            std::string name(s, vstart, i - vstart);
            if (name != var)
                fail("unknown variable '" + name + "' in series literal (expected '" + var + "')");
            expo = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                size_t estart = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (estart == i) fail("missing exponent after ^ in: " + text);
                expo = static_cast<unsigned>(std::stoul(s.substr(estart, i - estart)));
            }
        } else if (starred) {
            fail("dangling * in series literal: " + text);
        }
        if (numtext.empty() && expo == 0) fail("empty term in series literal: " + text);
        if (expo > cap)
            throw std::out_of_range("term degree " + std::to_string(expo) +
                                    " exceeds the cap " + std::to_string(cap));
        RingElement c = numtext.empty() ? ring_one(R) : parse_element(R, numtext);
        if (neg) c = -c;
        put(f, ExpVec{expo}, c);
    }
    return f;
}

bool same_window(const Series& a, const Series& b) {
    return same_ring(a.ring, b.ring) && a.vars == b.vars && a.cap == b.cap;
}

bool series_eq(const Series& a, const Series& b) {
    if (!same_window(a, b) || a.coeffs.size() != b.coeffs.size()) return false;
    return std::equal(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(),
                      [](const auto& x, const auto& y) {
                          return x.first == y.first && x.second == y.second;
                      });
}

Series series_add(const Series& a, const Series& b) {
    check_window(a, b, "add");
    Series out = a;
    for (const auto& [m, c] : b.coeffs) put(out, m, c);
    return out;
}

Series series_neg(const Series& a) {
    Series out = series_zero(a.ring, a.vars, a.cap);
    for (const auto& [m, c] : a.coeffs) out.coeffs.emplace(m, -c);
    return out;
}

Series series_sub(const Series& a, const Series& b) { return series_add(a, series_neg(b)); }

Series series_mul(const Series& a, const Series& b) {
    check_window(a, b, "mul");
    Series out = series_zero(a.ring, a.vars, a.cap);
    for (const auto& [ma, ca] : a.coeffs)
        for (const auto& [mb, cb] : b.coeffs) {
            if (total_degree(ma) + total_degree(mb) > a.cap) continue; // beyond the window
            ExpVec m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            put(out, m, ca * cb);
        }
    return out;
}

Series series_scale(const RingElement& c, const Series& a) {
    Series out = series_zero(a.ring, a.vars, a.cap);
    for (const auto& [m, v] : a.coeffs) put(out, m, c * v);
    return out;
}

Series series_pow(const Series& a, unsigned e) {
    Series out = series_one(a.ring, a.vars, a.cap);
    for (unsigned i = 0; i < e; ++i) out = series_mul(out, a);
    return out;
}

RingElement coeff(const Series& f, const ExpVec& m) {
    check_arity(f, m);
    if (total_degree(m) > f.cap)
        throw std::out_of_range("coefficient at degree " + std::to_string(total_degree(m)) +
                                " is outside the window (cap " + std::to_string(f.cap) + ")");
    auto it = f.coeffs.find(m);
    return it == f.coeffs.end() ? ring_zero(f.ring) : it->second;
}

VerificationReport finite_sum_identity(const Series& f) {
    VerificationReport r;
    r.check = "finite_sum_identity";
    r.coverage = Coverage::Exhaustive();
    r.params["terms"] = std::to_string(f.coeffs.size());
    Series acc = series_zero(f.ring, f.vars, f.cap);
    for (const auto& [m, c] : f.coeffs)
        acc = series_add(acc, series_monomial(f.ring, f.vars, f.cap, m, c));
    if (!series_eq(acc, f))
        r.record_failure({{{"series", f.str()}}, f.str(), acc.str()});
    return r;
}

bool pow_tendsto_zero(const Series& f) {
    RingElement c = coeff(f, ExpVec(f.vars.size(), 0));
    return is_nilpotent(c, 128).verdict == Nilpotency::Yes;
}

EvalPoint has_eval(const std::vector<RingElement>& values) {
    EvalPoint p;
    p.values = values;
    p.ok = true;
    for (size_t s = 0; s < values.size(); ++s) {
        NilpotencyResult res = is_nilpotent(values[s], 128);
        if (res.verdict != Nilpotency::Yes) {
            p.ok = false;
            p.reason = "coordinate " + std::to_string(s) + " = " + values[s].str() +
                       " is not nilpotent";
            return p;
        }
        p.index.push_back(res.index);
    }
    return p;
}

namespace {

RingElement eval_impl(const Series& f, const RingHom* phi, const EvalPoint& b) {
    if (!b.ok) fail("evaluation not defined at the point: " + b.reason);
    if (b.values.size() != f.vars.size()) fail("evaluation point has the wrong arity");
    const Ring target = phi ? (*phi)->target : f.ring;
    if (phi && !same_ring((*phi)->source, f.ring))
        fail("coefficient hom does not start at the series ring");
    for (const auto& v : b.values)
        if (!same_ring(v.ring(), target)) fail("evaluation point lives in the wrong ring");

    RingElement acc = ring_zero(target);
    for (const auto& [m, c] : f.coeffs) {
        bool vanishes = false;
        for (size_t s = 0; s < m.size(); ++s)
            if (m[s] >= b.index[s]) { vanishes = true; break; }
        if (vanishes) continue;
        RingElement term = phi ? hom_apply(*phi, c) : c;
        for (size_t s = 0; s < m.size(); ++s) term = term * ring_pow(b.values[s], m[s]);
        acc = acc + term;
    }
    return acc;
}

} // namespace

RingElement eval(const Series& f, const RingHom& phi, const EvalPoint& b) {
    return eval_impl(f, &phi, b);
}

RingElement eval(const Series& f, const EvalPoint& b) { return eval_impl(f, nullptr, b); }

RingElement eval_total(const Series& f, const RingHom& phi, const EvalPoint& b) {
    if (!b.ok) return ring_zero(phi->target); // dummy-zero convention; no laws survive it
    return eval(f, phi, b);
}

SubstPoint has_subst(const std::vector<Series>& values) {
    SubstPoint p;
    p.values = values;
    if (values.empty()) fail("substitution needs at least one series");
    for (size_t s = 1; s < values.size(); ++s)
        if (!same_window(values[0], values[s]))
            fail("substitution series live in different windows");
    p.ok = true;
    for (size_t s = 0; s < values.size(); ++s) {
        RingElement c = coeff(values[s], ExpVec(values[s].vars.size(), 0));
        NilpotencyResult res = is_nilpotent(c, 128);
        if (res.verdict != Nilpotency::Yes) {
            p.ok = false;
            p.reason = "constant coefficient of series " + std::to_string(s) + " = " + c.str() +
                       " is not nilpotent";
            return p;
        }
        p.index.push_back(res.index);
    }
    return p;
}

namespace {

Series subst_impl(const Series& f, const RingHom* phi, const SubstPoint& b) {
    if (!b.ok) fail("substitution not defined: " + b.reason);
    if (b.values.size() != f.vars.size()) fail("substitution point has the wrong arity");
    const Series& model = b.values[0];
    if (phi) {
        if (!same_ring((*phi)->source, f.ring)) fail("coefficient hom starts at the wrong ring");
        if (!same_ring((*phi)->target, model.ring)) fail("coefficient hom ends at the wrong ring");
    } else if (!same_ring(f.ring, model.ring)) {
        fail("substitution into a different coefficient ring needs a hom");
    }

    // power tables per variable, up to the largest exponent that can matter
    std::vector<std::vector<Series>> powers(b.values.size());
    for (size_t s = 0; s < b.values.size(); ++s) {
        unsigned need = 0;
        for (const auto& [m, c] : f.coeffs) {
            (void)c;
            if (m[s] < model.cap + b.index[s]) need = std::max(need, m[s]);
        }
        powers[s].push_back(series_one(model.ring, model.vars, model.cap));
        for (unsigned j = 1; j <= need; ++j)
            powers[s].push_back(series_mul(powers[s].back(), b.values[s]));
    }

    Series out = series_zero(model.ring, model.vars, model.cap);
    for (const auto& [m, c] : f.coeffs) {
        bool dropped = false;
        for (size_t s = 0; s < m.size(); ++s)
            if (m[s] >= model.cap + b.index[s]) { dropped = true; break; }
        if (dropped) continue; // contributes nothing inside the window
        Series term = series_const(model.ring, model.vars, model.cap,
                                   phi ? hom_apply(*phi, c) : c);
        for (size_t s = 0; s < m.size(); ++s)
            if (m[s] > 0) term = series_mul(term, powers[s][m[s]]);
        out = series_add(out, term);
    }
    return out;
}

} // namespace

Series subst(const Series& f, const SubstPoint& b) { return subst_impl(f, nullptr, b); }

Series subst(const Series& f, const RingHom& phi, const SubstPoint& b) {
    return subst_impl(f, &phi, b);
}

Series rescale(const RingElement& a, const Series& f) {
    if (f.vars.size() != 1) fail("rescale is defined for univariate series");
    if (!same_ring(a.ring(), f.ring)) fail("rescale factor from a different ring");
    Series out = series_zero(f.ring, f.vars, f.cap);
    for (const auto& [m, c] : f.coeffs) put(out, m, ring_pow(a, m[0]) * c);
    return out;
}

std::string Series::str() const {
    if (coeffs.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : coeffs) {
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        std::string mag = neg ? cs.substr(1) : cs;
        std::string mono;
        for (size_t s = 0; s < m.size(); ++s) {
            if (m[s] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[s];
            if (m[s] > 1) mono += "^" + std::to_string(m[s]);
        }
        std::string body;
        if (mono.empty()) body = mag;
        else if (mag == "1") body = mono;
        else body = mag + "*" + mono;
        if (first) {
            out = neg ? "-" + body : body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

} // namespace dpv
