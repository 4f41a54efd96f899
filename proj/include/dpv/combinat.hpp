#pragma once

#include "dpv/numeric.hpp"

namespace dpv {

// Exact factorials, binomial coefficients and the block-partition counts
// (m*n)! / (m! * (n!)^m) used by the divided-power composition law.

BigInt factorial(unsigned n);

// Binomial coefficient; 0 when k > n.
BigInt choose(unsigned n, unsigned k);

// (m*n)! / (m! * (n!)^m).  Counts partitions of an (m*n)-set into m blocks
// of size n.  The division is exact; an inexact division throws.
BigInt uniform_bell(unsigned m, unsigned n);

} // namespace dpv
