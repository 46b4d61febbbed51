#pragma once

#include "qlab/series.hpp"

namespace qlab {

enum class RRSide { Sum, Product };

/// Rogers-Ramanujan function G: sum side sum_{n>=0} q^(n^2)/(q;q)_n, or the
/// product side 1/((q;q^5)(q^4;q^5)). Both agree; the duplication is the point.
Series rr_G(std::size_t n, RRSide side, const Ring& ring = Ring::exact());

/// Rogers-Ramanujan function H: sum_{n>=0} q^(n^2+n)/(q;q)_n, or
/// 1/((q^2;q^5)(q^3;q^5)).
Series rr_H(std::size_t n, RRSide side, const Ring& ring = Ring::exact());

/// T(q^k) where T = G/H (constant term 1, so T is invertible).
Series t_series(std::size_t k, std::size_t n, const Ring& ring = Ring::exact());

/// K = f2 f5^5 / (f1 f10^5).
Series k_series(std::size_t n, const Ring& ring = Ring::exact());

/// Depth-d truncation of the Rogers-Ramanujan continued fraction with the
/// leading q^(1/5) stripped: 1/(1 + q/(1 + q^2/(... + q^d))). Converges
/// coefficientwise to H/G as d grows.
Series rr_cf_convergent(std::size_t depth, std::size_t n, const Ring& ring = Ring::exact());

}  // namespace qlab
