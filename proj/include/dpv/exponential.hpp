#pragma once

#include "dpv/dpcore.hpp"
#include "dpv/series.hpp"

namespace dpv {

// Certificate for the exponential functional equation up to the cap:
// constant term 1 and C(i+j, i) * a_{i+j} = a_i * a_j for i + j <= cap.
struct ExpCertificate {
    bool ok = false;
    unsigned fail_i = 0, fail_j = 0; // first failing pair on refusal
    std::string detail;
};

// A univariate series of exponential type; constructed through
// make_exponential so the certificate has always been seen to pass.
struct ExponentialElement {
    Series series;
};

// Binomial-relation route: the working certificate.
ExpCertificate is_exponential(const Series& f);
// Substitution route: f(X0 + X1) = f(X0) f(X1) in two variables, compared
// coefficientwise.  Exists to cross-check the binomial route.
ExpCertificate is_exponential_subst_route(const Series& f);

ExponentialElement make_exponential(Series f); // throws on refusal, with (i, j)

ExponentialElement exp_one(const Ring& R, unsigned cap);
bool exp_eq(const ExponentialElement& f, const ExponentialElement& g);

// The group law is the series product; certificates are re-derived on every
// operation, and a failure there is an internal error, not a refusal.
ExponentialElement exp_add(const ExponentialElement& f, const ExponentialElement& g);
ExponentialElement exp_smul(const RingElement& a, const ExponentialElement& f);
ExponentialElement exp_neg(const ExponentialElement& f);

// sum_n gamma_n(a) X^n for a in the ideal; of exponential type by the laws
// of the structure, and re-verified per call.
ExponentialElement dp_exp(const DP& dp, const RingElement& a, unsigned cap);

// a -> dp_exp(a) is additive and scales correctly; checked exhaustively on
// finite ideals, sampled otherwise.
VerificationReport dp_exp_linear(const DP& dp, unsigned cap, const CheckOptions& opts = {});

// The unique extension h(x + y) = f(x) + g(y) of two maps into the
// exponential module, on the sum of two finite ideals.  Construction fails
// loudly if f and g disagree on the intersection or if the value depends on
// the chosen decomposition.
struct SupExtension {
    Ideal sum;
    std::map<RingElement, ExponentialElement> value; // per element of M + N
    VerificationReport report; // agreement + decomposition-independence audit
};
SupExtension linear_on_sup(const Ideal& M, const Ideal& N,
                           const std::function<ExponentialElement(const RingElement&)>& f,
                           const std::function<ExponentialElement(const RingElement&)>& g);

} // namespace dpv
