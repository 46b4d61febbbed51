#include "qlab/qproducts.hpp"

#include <cstdlib>

#include "qlab/config.hpp"
#include "qlab/modmath.hpp"

namespace qlab {

namespace {

// Signed coefficient vector -> Series in the requested ring.
Series from_signed(const std::vector<long long>& v, const Ring& ring) {
    if (ring.is_exact()) {
        std::vector<Rational> c(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) c[i] = Rational(v[i]);
        return Series(ring, std::move(c));
    }
    const std::uint64_t m = ring.modulus;
    std::vector<std::uint64_t> c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        long long r = v[i] % static_cast<long long>(m);
        if (r < 0) r += static_cast<long long>(m);
        c[i] = static_cast<std::uint64_t>(r);
    }
    return Series(ring, std::move(c));
}

}  // namespace

Series euler_f(std::size_t k, std::size_t n, const Ring& ring) {
    if (k == 0) throw Error("euler_f dilation must be >= 1");
    // (q;q)_inf = sum_{j in Z} (-1)^j q^{j(3j-1)/2}, dilated by k.
    std::vector<long long> v(n, 0);
    if (n > 0) v[0] = 1;
    for (std::size_t j = 1;; ++j) {
        const std::size_t g1 = j * (3 * j - 1) / 2;
        const std::size_t g2 = j * (3 * j + 1) / 2;
        if (g1 * k >= n) break;
        const long long s = (j % 2 == 1) ? -1 : +1;
        v[g1 * k] += s;
        if (g2 * k < n) v[g2 * k] += s;
    }
    return from_signed(v, ring);
}

Series pochhammer_inf(const ProductSpec& spec, std::size_t n, const Ring& ring) {
    if (spec.sign != 1 && spec.sign != -1) throw Error("product sign must be +1 or -1");
    if (spec.offset == 0 || spec.step == 0) throw Error("product offset and step must be >= 1");
    if (spec.exponent == 0) throw Error("product exponent must be nonzero");

    // prod_{t = a + j*m < n} (1 - sign*q^t); each binomial factor applied in
    // place in O(n).
    Series p = [&] {
        if (ring.is_exact()) {
            std::vector<Rational> v(n, Rational(0));
            v[0] = 1;
            for (std::size_t t = spec.offset; t < n; t += spec.step)
                for (std::size_t i = n; i-- > t;)
                    v[i] -= Rational(spec.sign) * v[i - t];
            return Series(ring, std::move(v));
        }
        const std::uint64_t m = ring.modulus;
        std::vector<std::uint64_t> v(n, 0);
        v[0] = 1;
        for (std::size_t t = spec.offset; t < n; t += spec.step) {
            for (std::size_t i = n; i-- > t;) {
                const std::uint64_t d = v[i - t];
                v[i] = spec.sign == 1 ? mod_sub(v[i], d, m) : mod_add(v[i], d, m);
            }
        }
        return Series(ring, std::move(v));
    }();
    return spec.exponent == 1 ? p : pow(p, spec.exponent);
}

Series eta_quotient(const EtaQuotientSpec& spec, std::size_t n, const Ring& ring) {
    Series acc = Series::one(ring, n);
    for (const auto& [k, e] : spec.factors) {
        if (e == 0) throw Error("eta-quotient exponents must be nonzero");
        acc = mul(acc, pow(euler_f(k, n, ring), e));
    }
    return acc;
}

namespace {

enum class Inner { Some, Dsome };

Series lambert_inner(Inner which, std::size_t n, const Ring& ring) {
    if (n > config::precision_cap()) {
        throw ResourceLimitError("precision " + std::to_string(n) + " exceeds the global cap");
    }
    // q^m/(1+q^m)^2 = sum_{j>=1} (-1)^(j-1) j q^(mj); coefficients stay well
    // inside int64 (bounded by sigma(n)).
    std::vector<long long> v(n, 0);
    for (std::size_t mm = 1; mm < n; ++mm) {
        const long long sm = (which == Inner::Dsome && mm % 2 == 0) ? -1 : +1;
        for (std::size_t j = 1; mm * j < n; ++j) {
            const long long sj = (j % 2 == 1) ? +1 : -1;
            v[mm * j] += sm * sj * static_cast<long long>(j);
        }
    }
    return from_signed(v, ring);
}

}  // namespace

Series lambert_inner_some(std::size_t n, const Ring& ring) {
    return lambert_inner(Inner::Some, n, ring);
}

Series lambert_inner_dsome(std::size_t n, const Ring& ring) {
    return lambert_inner(Inner::Dsome, n, ring);
}

Series some_gf(std::size_t n, const Ring& ring) {
    return mul(invert(euler_f(1, n, ring)), lambert_inner_some(n, ring));
}

Series dsome_gf_lambert(std::size_t n, const Ring& ring) {
    const Series dist = mul(euler_f(2, n, ring), invert(euler_f(1, n, ring)));  // (-q;q)_inf
    return mul(dist, lambert_inner_dsome(n, ring));
}

Series dsome_gf_closed(std::size_t n) {
    const Ring ring = Ring::exact();
    const Series f1 = euler_f(1, n, ring);
    const Series f2 = euler_f(2, n, ring);
    const Series lhs = mul(f2, invert(f1));
    const Series rhs = mul(pow(f1, 7), invert(pow(f2, 3)));
    return div_exact_int(sub(lhs, rhs), Integer(8));
}

}  // namespace qlab
