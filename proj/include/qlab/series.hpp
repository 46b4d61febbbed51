#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlab/rational.hpp"
#include "qlab/ring.hpp"

namespace qlab {

/// Dense truncated formal power series over a coefficient ring.
///
/// A Series of precision N represents a power series known modulo q^N:
/// coeffs[i] is the coefficient of q^i for 0 <= i < N. Values are immutable
/// after construction; every operation below is a pure function, so series
/// may be shared freely between threads.
class Series {
public:
    /// Exact-ring series from rational coefficients (ring must be exact).
    Series(Ring ring, std::vector<Rational> coeffs);

    /// ModM series; values are reduced into [0, M) on construction.
    Series(Ring ring, std::vector<std::uint64_t> coeffs);

    static Series zeros(const Ring& ring, std::size_t n);
    static Series one(const Ring& ring, std::size_t n);
    /// c * q^k, truncated to precision n (zero series if k >= n).
    static Series monomial(const Ring& ring, const Rational& c, std::size_t k, std::size_t n);

    const Ring& ring() const { return ring_; }
    std::size_t precision() const { return prec_; }

    const std::vector<Rational>& rat() const { return rat_; }
    const std::vector<std::uint64_t>& mod() const { return mod_; }
    const Rational& rat_at(std::size_t i) const { return rat_[i]; }
    std::uint64_t mod_at(std::size_t i) const { return mod_[i]; }

    bool coeff_is_zero(std::size_t i) const;
    std::string coeff_string(std::size_t i) const;

    /// Order of the first nonzero coefficient; nullopt for the zero series.
    std::optional<std::size_t> zero_prefix_order() const;

    std::size_t nonzero_count() const;

private:
    Ring ring_;
    std::size_t prec_;
    std::vector<Rational> rat_;        // used iff exact ring
    std::vector<std::uint64_t> mod_;   // used iff ModM ring
};

/// Outcome of comparing two series coefficientwise up to some order.
struct CompareResult {
    bool equal = true;
    std::size_t index = 0;   // first differing index when !equal
    std::string lhs, rhs;    // the differing coefficients, as decimal strings
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series neg(const Series& a);

/// Truncated Cauchy product; precision = min of the operands'. Uses a
/// subquadratic (Karatsuba) path for long dense operands.
Series mul(const Series& a, const Series& b);

/// Multiplicative inverse to the series' precision. The constant term must be
/// a unit (nonzero rational / coprime to M).
Series invert(const Series& a);

/// a^e with pow(a, 0) = 1; negative e requires a unit constant term.
Series pow(const Series& a, long long e);

/// q -> q^m. Result precision is a.precision * m, clamped to the global cap.
Series dilate(const Series& a, std::size_t m);

/// Multiply by c * q^k; shifted coefficients beyond the precision are dropped.
Series mul_monomial(const Series& a, const Rational& c, std::size_t k);

/// Extract coefficients with index = r (mod m): result[i] = a[m*i + r],
/// precision ceil((a.precision - r) / m).
Series dissect(const Series& a, std::size_t m, std::size_t r);

/// Lower the precision to n (1 <= n <= a.precision).
Series truncate(const Series& a, std::size_t n);

/// q -> -q: negates the odd-index coefficients.
Series alternate_signs(const Series& a);

/// Coefficientwise reduction of an integral exact series into Z/M.
Series reduce_mod(const Series& a, std::uint64_t M);

/// Exact division of an integral exact series by a nonzero integer d;
/// NotDivisibleError at the first coefficient d does not divide.
Series div_exact_int(const Series& a, const Integer& d);

/// Congruence test for exact series with denominators: with D the lcm of all
/// coefficient denominators, the series counts as == 0 (mod M) iff every
/// coefficient times D is == 0 (mod D*M). Returns the first failing index.
std::optional<std::size_t> scaled_congruence_first_failure(const Series& a, std::uint64_t M);
bool scaled_congruence_zero(const Series& a, std::uint64_t M);

/// Compare the first n coefficients; both series need precision >= n.
CompareResult equal_to_precision(const Series& a, const Series& b, std::size_t n);

}  // namespace qlab
