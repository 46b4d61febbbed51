#pragma once

#include <cstdint>
#include <vector>

#include "qlab/series.hpp"

namespace qlab {

/// One infinite product factor (1 - sign * q^(a + j*m))^e, j >= 0.
/// sign = +1 gives (q^a; q^m)_inf, sign = -1 gives (-q^a; q^m)_inf.
struct ProductSpec {
    int sign = +1;        // +1 or -1
    std::size_t offset = 1;  // a >= 1
    std::size_t step = 1;    // m >= 1
    long long exponent = 1;  // e != 0
};

/// A finite product of f_k = (q^k; q^k)_inf raised to integer powers.
struct EtaQuotientSpec {
    std::vector<std::pair<std::size_t, long long>> factors;  // (dilation k, exponent e)
};

/// f_k = (q^k; q^k)_inf expanded via the pentagonal-number series of (q;q)_inf
/// dilated by k. The direct finite product (pochhammer_inf) is the
/// independent route used to cross-check this expansion in tests.
Series euler_f(std::size_t k, std::size_t n, const Ring& ring = Ring::exact());

/// Direct truncated product over the factors a + j*m < n.
Series pochhammer_inf(const ProductSpec& spec, std::size_t n, const Ring& ring = Ring::exact());

/// Product of pow(euler_f(k), e) over the quotient's factors.
Series eta_quotient(const EtaQuotientSpec& spec, std::size_t n, const Ring& ring = Ring::exact());

/// Inner Lambert sums, expanded by divisor sieve in O(n log n):
///   SOME inner:  [q^N] = sum over N = m*j of (-1)^(j-1) * j
///   DSOME inner: [q^N] = sum over N = m*j of (-1)^(m-1) * (-1)^(j-1) * j
Series lambert_inner_some(std::size_t n, const Ring& ring = Ring::exact());
Series lambert_inner_dsome(std::size_t n, const Ring& ring = Ring::exact());

/// Generating function of SOME: (1/f1) * lambert_inner_some.
Series some_gf(std::size_t n, const Ring& ring = Ring::exact());

/// Generating function of DSOME via the Lambert route: (f2/f1) * inner.
Series dsome_gf_lambert(std::size_t n, const Ring& ring = Ring::exact());

/// Generating function of DSOME via the closed form (f2/f1 - f1^7/f2^3)/8.
/// Exact ring only; the division is exact for the true series.
Series dsome_gf_closed(std::size_t n);

}  // namespace qlab
