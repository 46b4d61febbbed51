#include "qlab/rr.hpp"

#include "qlab/qproducts.hpp"

namespace qlab {

namespace {

// sum_{k>=0} q^(k^2 + shift*k) / (q;q)_k. Term k is obtained from term k-1 by
// multiplying with q^(2k-1+shift) / (1 - q^k); the q-exponent grows
// quadratically, so the loop stops after ~sqrt(n) steps.
Series rr_sum_side(std::size_t n, std::size_t shift, const Ring& ring) {
    const Series one = Series::one(ring, n);
    Series acc = one;
    Series term = one;
    for (std::size_t k = 1; k * k + shift * k < n; ++k) {
        term = mul_monomial(term, Rational(1), 2 * k - 1 + shift);
        const Series binom = sub(one, Series::monomial(ring, Rational(1), k, n));
        term = mul(term, invert(binom));
        acc = add(acc, term);
    }
    return acc;
}

Series rr_product_side(std::size_t a1, std::size_t a2, std::size_t n, const Ring& ring) {
    const Series p = mul(pochhammer_inf({+1, a1, 5, 1}, n, ring),
                         pochhammer_inf({+1, a2, 5, 1}, n, ring));
    return invert(p);
}

}  // namespace

Series rr_G(std::size_t n, RRSide side, const Ring& ring) {
    return side == RRSide::Sum ? rr_sum_side(n, 0, ring) : rr_product_side(1, 4, n, ring);
}

Series rr_H(std::size_t n, RRSide side, const Ring& ring) {
    return side == RRSide::Sum ? rr_sum_side(n, 1, ring) : rr_product_side(2, 3, n, ring);
}

Series t_series(std::size_t k, std::size_t n, const Ring& ring) {
    if (k == 0) throw Error("t_series dilation must be >= 1");
    const std::size_t inner = (n + k - 1) / k;
    const Series t = mul(rr_G(inner, RRSide::Product, ring),
                         invert(rr_H(inner, RRSide::Product, ring)));
    return k == 1 ? t : truncate(dilate(t, k), n);
}

Series k_series(std::size_t n, const Ring& ring) {
    return eta_quotient({{{2, 1}, {5, 5}, {1, -1}, {10, -5}}}, n, ring);
}

Series rr_cf_convergent(std::size_t depth, std::size_t n, const Ring& ring) {
    if (depth == 0) throw Error("convergent depth must be >= 1");
    const Series one = Series::one(ring, n);
    // innermost denominator 1 + q^depth, then s -> 1 + q^level / s outward
    Series s = add(one, Series::monomial(ring, Rational(1), depth, n));
    for (std::size_t level = depth; level-- > 1;)
        s = add(one, mul_monomial(invert(s), Rational(1), level));
    return invert(s);
}

}  // namespace qlab
