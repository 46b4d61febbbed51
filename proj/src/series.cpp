#include "qlab/series.hpp"

#include <algorithm>

#include "qlab/config.hpp"
#include "qlab/modmath.hpp"

namespace qlab {

namespace {

void check_precision(std::size_t n) {
    if (n < 1) throw Error("series precision must be >= 1");
    if (n > config::precision_cap()) {
        throw ResourceLimitError("precision " + std::to_string(n) +
                                 " exceeds the global cap " +
                                 std::to_string(config::precision_cap()));
    }
}

std::uint64_t rational_to_mod(const Rational& c, std::uint64_t m) {
    Integer num = rat_num(c) % Integer(m);
    if (num < 0) num += m;
    std::uint64_t nv = static_cast<std::uint64_t>(num);
    if (is_integral(c)) return nv;
    Integer den = rat_den(c) % Integer(m);
    std::uint64_t dv = static_cast<std::uint64_t>(den);
    return mod_mul(nv, mod_inverse(dv, m), m);
}

// ---- ring-generic kernels -------------------------------------------------

struct ExactOps {
    using V = Rational;
    static V zero() { return V(0); }
    static bool is_zero(const V& a) { return a.is_zero(); }
    static V add(const V& a, const V& b) { return a + b; }
    static V sub(const V& a, const V& b) { return a - b; }
    static V mul(const V& a, const V& b) { return a * b; }
    static V neg(const V& a) { return -a; }
    static V inv(const V& a) {
        if (a.is_zero()) throw NonUnitLeadingError();
        return 1 / a;
    }
};

// Exact series are integral far more often than not (eta quotients, inner
// Lambert sums); plain cpp_int arithmetic skips the gcd normalization that
// dominates cpp_rational, so integral inputs get routed through this.
struct IntOps {
    using V = Integer;
    static V zero() { return V(0); }
    static bool is_zero(const V& a) { return a.is_zero(); }
    static V add(const V& a, const V& b) { return a + b; }
    static V sub(const V& a, const V& b) { return a - b; }
    static V mul(const V& a, const V& b) { return a * b; }
    static V neg(const V& a) { return -a; }
    static V inv(const V& a) {
        if (a != 1 && a != -1) throw NonUnitLeadingError();
        return a;
    }
};

struct ModOps {
    std::uint64_t m;
    using V = std::uint64_t;
    static V zero() { return 0; }
    static bool is_zero(V a) { return a == 0; }
    V add(V a, V b) const { return mod_add(a, b, m); }
    V sub(V a, V b) const { return mod_sub(a, b, m); }
    V mul(V a, V b) const { return mod_mul(a, b, m); }
    V neg(V a) const { return mod_neg(a, m); }
    V inv(V a) const { return mod_inverse(a, m); }
};

bool all_integral(const std::vector<Rational>& v) {
    for (const auto& c : v)
        if (!is_integral(c)) return false;
    return true;
}

std::vector<Integer> to_integers(const std::vector<Rational>& v, std::size_t n) {
    std::vector<Integer> out(std::min(v.size(), n));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = rat_num(v[i]);
    return out;
}

std::vector<Rational> to_rationals(std::vector<Integer> v) {
    std::vector<Rational> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(std::move(v[i]));
    return out;
}

template <class Ops>
std::vector<std::size_t> nonzero_indices(const std::vector<typename Ops::V>& a) {
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!Ops::is_zero(a[i])) nz.push_back(i);
    return nz;
}

// Schoolbook product truncated to n, iterating over the sparser operand.
template <class Ops>
std::vector<typename Ops::V> mul_school(const Ops& ops, const std::vector<typename Ops::V>& a,
                                        const std::vector<typename Ops::V>& b, std::size_t n) {
    const auto nza = nonzero_indices<Ops>(a);
    const auto nzb = nonzero_indices<Ops>(b);
    const auto& outer = nza.size() <= nzb.size() ? a : b;
    const auto& inner = nza.size() <= nzb.size() ? b : a;
    const auto& nzo = nza.size() <= nzb.size() ? nza : nzb;

    std::vector<typename Ops::V> c(n, Ops::zero());
    for (std::size_t i : nzo) {
        if (i >= n) break;
        const auto& oi = outer[i];
        const std::size_t lim = std::min(inner.size(), n - i);
        for (std::size_t j = 0; j < lim; ++j) {
            if (Ops::is_zero(inner[j])) continue;
            c[i + j] = ops.add(c[i + j], ops.mul(oi, inner[j]));
        }
    }
    return c;
}

// Full (untruncated) Karatsuba product, length la + lb - 1.
template <class Ops>
void karatsuba(const Ops& ops, const typename Ops::V* a, std::size_t la,
               const typename Ops::V* b, std::size_t lb, typename Ops::V* out) {
    using V = typename Ops::V;
    if (la == 0 || lb == 0) return;
    if (std::min(la, lb) <= 32) {
        for (std::size_t i = 0; i < la; ++i) {
            if (Ops::is_zero(a[i])) continue;
            for (std::size_t j = 0; j < lb; ++j) {
                if (Ops::is_zero(b[j])) continue;
                out[i + j] = ops.add(out[i + j], ops.mul(a[i], b[j]));
            }
        }
        return;
    }
    const std::size_t h = (std::max(la, lb) + 1) / 2;
    const std::size_t la0 = std::min(la, h), la1 = la - la0;
    const std::size_t lb0 = std::min(lb, h), lb1 = lb - lb0;

    // z0 = a0*b0, z2 = a1*b1
    std::vector<V> z0(la0 + lb0 - 1, Ops::zero());
    karatsuba(ops, a, la0, b, lb0, z0.data());
    std::vector<V> z2;
    if (la1 && lb1) {
        z2.assign(la1 + lb1 - 1, Ops::zero());
        karatsuba(ops, a + la0, la1, b + lb0, lb1, z2.data());
    }

    // z1 = (a0+a1)(b0+b1) - z0 - z2
    std::vector<V> as(std::max(la0, la1), Ops::zero());
    for (std::size_t i = 0; i < la0; ++i) as[i] = a[i];
    for (std::size_t i = 0; i < la1; ++i) as[i] = ops.add(as[i], a[la0 + i]);
    std::vector<V> bs(std::max(lb0, lb1), Ops::zero());
    for (std::size_t i = 0; i < lb0; ++i) bs[i] = b[i];
    for (std::size_t i = 0; i < lb1; ++i) bs[i] = ops.add(bs[i], b[lb0 + i]);
    std::vector<V> z1(as.size() + bs.size() - 1, Ops::zero());
    karatsuba(ops, as.data(), as.size(), bs.data(), bs.size(), z1.data());
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = ops.sub(z1[i], z0[i]);
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = ops.sub(z1[i], z2[i]);

    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = ops.add(out[i], z0[i]);
    for (std::size_t i = 0; i < z1.size(); ++i) out[h + i] = ops.add(out[h + i], z1[i]);
    for (std::size_t i = 0; i < z2.size(); ++i) out[2 * h + i] = ops.add(out[2 * h + i], z2[i]);
}

template <class Ops>
std::vector<typename Ops::V> mul_impl(const Ops& ops, const std::vector<typename Ops::V>& a,
                                      const std::vector<typename Ops::V>& b, std::size_t n) {
    const std::size_t la = std::min(a.size(), n), lb = std::min(b.size(), n);
    std::size_t nza = 0, nzb = 0;
    for (std::size_t i = 0; i < la; ++i) nza += !Ops::is_zero(a[i]);
    for (std::size_t i = 0; i < lb; ++i) nzb += !Ops::is_zero(b[i]);
    // Karatsuba pays off only for long, dense operands.
    const bool dense = std::min(nza, nzb) * 8 >= n;
    if (n >= 4096 && dense) {
        std::vector<typename Ops::V> full(la + lb - 1, Ops::zero());
        karatsuba(ops, a.data(), la, b.data(), lb, full.data());
        full.resize(n, Ops::zero());
        return full;
    }
    return mul_school(ops, a, b, n);
}

// 1/a via the convolution recurrence, iterating the nonzero terms of a:
// b[k] = -a0^{-1} * sum_{j in nz(a), j <= k} a[j] * b[k-j].
template <class Ops>
std::vector<typename Ops::V> invert_impl(const Ops& ops, const std::vector<typename Ops::V>& a) {
    using V = typename Ops::V;
    const std::size_t n = a.size();
    const V inv0 = ops.inv(a[0]);  // throws NonUnitLeadingError if not a unit
    std::vector<std::size_t> nz;
    for (std::size_t i = 1; i < n; ++i)
        if (!Ops::is_zero(a[i])) nz.push_back(i);

    std::vector<V> b(n, Ops::zero());
    b[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
        V s = Ops::zero();
        for (std::size_t j : nz) {
            if (j > k) break;
            s = ops.add(s, ops.mul(a[j], b[k - j]));
        }
        if (!Ops::is_zero(s)) b[k] = ops.neg(ops.mul(inv0, s));
    }
    return b;
}

}  // namespace

// ---- Series basics ---------------------------------------------------------

Series::Series(Ring ring, std::vector<Rational> coeffs) : ring_(ring), prec_(coeffs.size()) {
    if (!ring_.is_exact()) throw RingMismatchError("rational coefficients require the exact ring");
    check_precision(prec_);
    rat_ = std::move(coeffs);
}

Series::Series(Ring ring, std::vector<std::uint64_t> coeffs) : ring_(ring), prec_(coeffs.size()) {
    if (ring_.is_exact()) throw RingMismatchError("ModM coefficients require a ModM ring");
    check_precision(prec_);
    for (auto& v : coeffs)
        if (v >= ring_.modulus) v %= ring_.modulus;
    mod_ = std::move(coeffs);
}

Series Series::zeros(const Ring& ring, std::size_t n) {
    check_precision(n);
    if (ring.is_exact()) return Series(ring, std::vector<Rational>(n, Rational(0)));
    return Series(ring, std::vector<std::uint64_t>(n, 0));
}

Series Series::one(const Ring& ring, std::size_t n) { return monomial(ring, Rational(1), 0, n); }

Series Series::monomial(const Ring& ring, const Rational& c, std::size_t k, std::size_t n) {
    check_precision(n);
    if (ring.is_exact()) {
        std::vector<Rational> v(n, Rational(0));
        if (k < n) v[k] = c;
        return Series(ring, std::move(v));
    }
    std::vector<std::uint64_t> v(n, 0);
    if (k < n) v[k] = rational_to_mod(c, ring.modulus);
    return Series(ring, std::move(v));
}

bool Series::coeff_is_zero(std::size_t i) const {
    return ring_.is_exact() ? rat_[i].is_zero() : mod_[i] == 0;
}

std::string Series::coeff_string(std::size_t i) const {
    return ring_.is_exact() ? to_string(rat_[i]) : std::to_string(mod_[i]);
}

std::optional<std::size_t> Series::zero_prefix_order() const {
    for (std::size_t i = 0; i < prec_; ++i)
        if (!coeff_is_zero(i)) return i;
    return std::nullopt;
}

std::size_t Series::nonzero_count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < prec_; ++i) c += !coeff_is_zero(i);
    return c;
}

// ---- arithmetic -------------------------------------------------------------

namespace {

void require_same_ring(const Series& a, const Series& b) {
    if (a.ring() != b.ring()) throw RingMismatchError();
}

template <class F>
Series zip(const Series& a, const Series& b, F&& f) {
    require_same_ring(a, b);
    const std::size_t n = std::min(a.precision(), b.precision());
    if (a.ring().is_exact()) {
        std::vector<Rational> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = f(ExactOps{}, a.rat_at(i), b.rat_at(i));
        return Series(a.ring(), std::move(v));
    }
    ModOps ops{a.ring().modulus};
    std::vector<std::uint64_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(ops, a.mod_at(i), b.mod_at(i));
    return Series(a.ring(), std::move(v));
}

}  // namespace

Series add(const Series& a, const Series& b) {
    return zip(a, b, [](const auto& ops, const auto& x, const auto& y) { return ops.add(x, y); });
}

Series sub(const Series& a, const Series& b) {
    return zip(a, b, [](const auto& ops, const auto& x, const auto& y) { return ops.sub(x, y); });
}

Series neg(const Series& a) {
    if (a.ring().is_exact()) {
        std::vector<Rational> v(a.precision());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = -a.rat_at(i);
        return Series(a.ring(), std::move(v));
    }
    ModOps ops{a.ring().modulus};
    std::vector<std::uint64_t> v(a.precision());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ops.neg(a.mod_at(i));
    return Series(a.ring(), std::move(v));
}

Series mul(const Series& a, const Series& b) {
    require_same_ring(a, b);
    const std::size_t n = std::min(a.precision(), b.precision());
    if (a.ring().is_exact()) {
        if (all_integral(a.rat()) && all_integral(b.rat())) {
            return Series(a.ring(), to_rationals(mul_impl(IntOps{}, to_integers(a.rat(), n),
                                                          to_integers(b.rat(), n), n)));
        }
        return Series(a.ring(), mul_impl(ExactOps{}, a.rat(), b.rat(), n));
    }
    ModOps ops{a.ring().modulus};
    return Series(a.ring(), mul_impl(ops, a.mod(), b.mod(), n));
}

Series invert(const Series& a) {
    if (a.ring().is_exact()) {
        // an integral series with unit leading term has an integral inverse
        if (!a.rat().empty() && (a.rat_at(0) == 1 || a.rat_at(0) == -1) &&
            all_integral(a.rat())) {
            return Series(a.ring(), to_rationals(invert_impl(
                                        IntOps{}, to_integers(a.rat(), a.precision()))));
        }
        return Series(a.ring(), invert_impl(ExactOps{}, a.rat()));
    }
    ModOps ops{a.ring().modulus};
    return Series(a.ring(), invert_impl(ops, a.mod()));
}

Series pow(const Series& a, long long e) {
    if (e == 0) return Series::one(a.ring(), a.precision());
    if (e < 0) return invert(pow(a, -e));

    // Iterated multiplication beats squaring for sparse bases (squares of a
    // sparse series densify immediately); otherwise square and multiply.
    const std::size_t n = a.precision();
    unsigned long long k = static_cast<unsigned long long>(e);
    if (a.nonzero_count() <= 300 && k <= 16) {
        Series r = a;
        for (unsigned long long i = 1; i < k; ++i) r = mul(r, a);
        return r;
    }
    Series result = Series::one(a.ring(), n);
    Series base = a;
    while (k > 0) {
        if (k & 1) result = mul(result, base);
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return result;
}

Series dilate(const Series& a, std::size_t m) {
    if (m == 0) throw Error("dilation factor must be >= 1");
    const std::size_t cap = config::precision_cap();
    const std::size_t n = a.precision() <= cap / m ? a.precision() * m : cap;
    if (a.ring().is_exact()) {
        std::vector<Rational> v(n, Rational(0));
        for (std::size_t i = 0; i * m < n; ++i) v[i * m] = a.rat_at(i);
        return Series(a.ring(), std::move(v));
    }
    std::vector<std::uint64_t> v(n, 0);
    for (std::size_t i = 0; i * m < n; ++i) v[i * m] = a.mod_at(i);
    return Series(a.ring(), std::move(v));
}

Series mul_monomial(const Series& a, const Rational& c, std::size_t k) {
    const std::size_t n = a.precision();
    if (a.ring().is_exact()) {
        std::vector<Rational> v(n, Rational(0));
        for (std::size_t i = 0; i + k < n; ++i) v[i + k] = c * a.rat_at(i);
        return Series(a.ring(), std::move(v));
    }
    ModOps ops{a.ring().modulus};
    const std::uint64_t cv = rational_to_mod(c, ops.m);
    std::vector<std::uint64_t> v(n, 0);
    for (std::size_t i = 0; i + k < n; ++i) v[i + k] = ops.mul(cv, a.mod_at(i));
    return Series(a.ring(), std::move(v));
}

Series dissect(const Series& a, std::size_t m, std::size_t r) {
    if (m == 0) throw Error("dissection step must be >= 1");
    if (r >= m) throw Error("dissection residue must satisfy 0 <= r < m");
    if (a.precision() <= r) {
        throw InsufficientPrecisionError("dissection residue " + std::to_string(r) +
                                         " needs precision > " + std::to_string(r));
    }
    const std::size_t n = (a.precision() - r + m - 1) / m;
    if (a.ring().is_exact()) {
        std::vector<Rational> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = a.rat_at(m * i + r);
        return Series(a.ring(), std::move(v));
    }
    std::vector<std::uint64_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a.mod_at(m * i + r);
    return Series(a.ring(), std::move(v));
}

Series truncate(const Series& a, std::size_t n) {
    if (n > a.precision()) {
        throw InsufficientPrecisionError("cannot truncate precision " +
                                         std::to_string(a.precision()) + " up to " +
                                         std::to_string(n));
    }
    if (n == a.precision()) return a;
    if (a.ring().is_exact())
        return Series(a.ring(), std::vector<Rational>(a.rat().begin(), a.rat().begin() + n));
    return Series(a.ring(),
                  std::vector<std::uint64_t>(a.mod().begin(), a.mod().begin() + n));
}

Series alternate_signs(const Series& a) {
    if (a.ring().is_exact()) {
        std::vector<Rational> v = a.rat();
        for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
        return Series(a.ring(), std::move(v));
    }
    ModOps ops{a.ring().modulus};
    std::vector<std::uint64_t> v = a.mod();
    for (std::size_t i = 1; i < v.size(); i += 2) v[i] = ops.neg(v[i]);
    return Series(a.ring(), std::move(v));
}

Series reduce_mod(const Series& a, std::uint64_t M) {
    if (!a.ring().is_exact()) throw RingMismatchError("reduce_mod expects an exact-ring series");
    const Ring ring = Ring::mod(M);
    std::vector<std::uint64_t> v(a.precision());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Rational& c = a.rat_at(i);
        if (!is_integral(c)) throw NonIntegralCoefficientError(i);
        Integer r = rat_num(c) % Integer(M);
        if (r < 0) r += M;
        v[i] = static_cast<std::uint64_t>(r);
    }
    return Series(ring, std::move(v));
}

Series div_exact_int(const Series& a, const Integer& d) {
    if (!a.ring().is_exact())
        throw RingMismatchError("div_exact_int expects an exact-ring series");
    if (d == 0) throw Error("division by zero");
    std::vector<Rational> v(a.precision());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Rational& c = a.rat_at(i);
        if (!is_integral(c) || rat_num(c) % d != 0) throw NotDivisibleError(i, d.str());
        v[i] = Rational(rat_num(c) / d);
    }
    return Series(a.ring(), std::move(v));
}

std::optional<std::size_t> scaled_congruence_first_failure(const Series& a, std::uint64_t M) {
    if (!a.ring().is_exact())
        throw RingMismatchError("scaled congruence expects an exact-ring series");
    Integer scale = 1;
    for (std::size_t i = 0; i < a.precision(); ++i)
        scale = boost::multiprecision::lcm(scale, rat_den(a.rat_at(i)));
    const Integer modulus = scale * Integer(M);
    for (std::size_t i = 0; i < a.precision(); ++i) {
        const Rational& c = a.rat_at(i);
        const Integer scaled = rat_num(c) * (scale / rat_den(c));
        if (scaled % modulus != 0) return i;
    }
    return std::nullopt;
}

bool scaled_congruence_zero(const Series& a, std::uint64_t M) {
    return !scaled_congruence_first_failure(a, M).has_value();
}

CompareResult equal_to_precision(const Series& a, const Series& b, std::size_t n) {
    require_same_ring(a, b);
    if (a.precision() < n || b.precision() < n) {
        throw InsufficientPrecisionError("comparison to order " + std::to_string(n) +
                                         " needs both precisions >= " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const bool same = a.ring().is_exact() ? a.rat_at(i) == b.rat_at(i)
                                              : a.mod_at(i) == b.mod_at(i);
        if (!same) return CompareResult{false, i, a.coeff_string(i), b.coeff_string(i)};
    }
    return CompareResult{};
}

}  // namespace qlab
