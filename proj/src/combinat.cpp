#include "dpv/combinat.hpp"

#include <stdexcept>

namespace dpv {

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt choose(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    // r stays integral after each step: r is C(n-k+i, i).
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt uniform_bell(unsigned m, unsigned n) {
    BigInt num = factorial(m * n);
    BigInt den = factorial(m) * int_pow(factorial(n), m);
    BigInt q, r;
    divide_qr(num, den, q, r);
    if (r != 0)
        throw std::logic_error("uniform_bell: division not exact");
    return q;
}

} // namespace dpv
