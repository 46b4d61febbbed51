#pragma once

#include <string_view>
#include <vector>

#include "qlab/expr.hpp"
#include "qlab/series.hpp"

namespace qlab {

/// Built-in series referenced from identity records and the CLI as '@name'.
/// Available names:
///   ls, ld                  inner Lambert sums (SOME / DSOME variants)
///   some_gf                 SOME generating function
///   dsome_lambert           DSOME generating function, Lambert route
///   dsome_closed            DSOME generating function, closed form
///   dsome_5n1               coefficients DSOME(5n+1) of the closed form
///   dsome_125n26            coefficients DSOME(125n+26) of the closed form
///   rr_g_sum, rr_g_prod     both sides of the first Rogers-Ramanujan identity
///   rr_h_sum, rr_h_prod     both sides of the second
/// Results are cached per name; requests in a ModM ring are reductions of the
/// exact computation.
Series named_series(std::string_view name, std::size_t n, const Ring& ring);

const std::vector<std::string>& named_series_ids();

/// Evaluation environment wiring '@name' atoms to named_series().
EvalEnv default_eval_env();

}  // namespace qlab
