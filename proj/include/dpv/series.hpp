#pragma once

#include "dpv/ideal.hpp"
#include "dpv/report.hpp"

namespace dpv {

// Power series in finitely many variables, truncated by total degree: every
// operation is exact modulo terms of total degree > cap.  Stored sparsely;
// zero coefficients are never kept, so equality is map equality.
class Series {
public:
    Ring ring;
    std::vector<std::string> vars;
    unsigned cap = 0;
    std::map<ExpVec, RingElement> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    std::string str() const;
};

unsigned total_degree(const ExpVec& m);

Series series_zero(const Ring& R, std::vector<std::string> vars, unsigned cap);
Series series_const(const Ring& R, std::vector<std::string> vars, unsigned cap,
                    const RingElement& c);
Series series_one(const Ring& R, std::vector<std::string> vars, unsigned cap);
// c * T^m; exponents beyond the cap are rejected, not dropped
Series series_monomial(const Ring& R, std::vector<std::string> vars, unsigned cap,
                       const ExpVec& m, const RingElement& c);
Series series_var(const Ring& R, std::vector<std::string> vars, unsigned cap, size_t which);
Series series_from_terms(const Ring& R, std::vector<std::string> vars, unsigned cap,
                         const std::vector<std::pair<ExpVec, RingElement>>& terms);

// Univariate literals like "1 + 2*X - X^3" (the variable name is `var`).
Series parse_series(const Ring& R, const std::string& var, unsigned cap,
                    const std::string& text);
// "(1,0)" -> {1,0}; used by the config front end for term-list literals.
ExpVec parse_exp_vec(const std::string& text, size_t arity);

bool series_eq(const Series& a, const Series& b);
bool same_window(const Series& a, const Series& b); // ring, vars, cap all agree

Series series_add(const Series& a, const Series& b);
Series series_sub(const Series& a, const Series& b);
Series series_neg(const Series& a);
Series series_mul(const Series& a, const Series& b);
Series series_scale(const RingElement& c, const Series& a);
Series series_pow(const Series& a, unsigned e);

// Stored value or zero; asking beyond the cap is an error, never a silent 0.
RingElement coeff(const Series& f, const ExpVec& m);

// Rebuilds f as the finite sum of its own monomials and asserts equality.
VerificationReport finite_sum_identity(const Series& f);

// Some power of f is the zero truncated series iff the constant coefficient
// is nilpotent; this returns the constant-coefficient verdict.
bool pow_tendsto_zero(const Series& f);

// Point evaluation needs every coordinate nilpotent; the certificate records
// the nilpotency index per variable (b_s^{index} = 0).
struct EvalPoint {
    std::vector<RingElement> values;
    std::vector<unsigned> index;
    bool ok = false;
    std::string reason; // set on refusal
};
EvalPoint has_eval(const std::vector<RingElement>& values);

// sum_m phi(coeff_m(f)) * b^m; terms with any m_s >= index_s are dropped
// because they vanish.  Refused points raise invalid_argument here...
RingElement eval(const Series& f, const RingHom& phi, const EvalPoint& b);
RingElement eval(const Series& f, const EvalPoint& b); // phi = identity
// ...and return the target's zero in the totalized variant, which exists for
// parity with the dummy-value convention and carries no algebraic laws.
RingElement eval_total(const Series& f, const RingHom& phi, const EvalPoint& b);

// Substitution target: one series per variable of f, all in the same window.
struct SubstPoint {
    std::vector<Series> values;
    std::vector<unsigned> index; // nilpotency index of each constant term
    bool ok = false;
    std::string reason;
};
SubstPoint has_subst(const std::vector<Series>& values);

// Composite series, exact up to the target cap.  Input terms with any
// m_s >= cap_out + k_s are dropped: writing b_s = c_s + h_s with h_s of
// positive order, b^m expands into C(m,j) c^{m-j} h^j, and a term survives
// the output window only when j <= cap_out while c^{m-j} needs m - j < k_s.
Series subst(const Series& f, const SubstPoint& b);
Series subst(const Series& f, const RingHom& phi, const SubstPoint& b);

// f(aX) for univariate f: coeff_n -> a^n coeff_n.
Series rescale(const RingElement& a, const Series& f);

} // namespace dpv
