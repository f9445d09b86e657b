#include "mrfgrid/surrogate/step_rule.hpp"

#include <cmath>

#include "mrfgrid/core/errors.hpp"

namespace mrfgrid {

double step_scale(double grad_norm, double grad_ref, double kappa) {
  if (!(kappa > 0.0)) throw UsageError("kappa must be positive");
  if (!(grad_ref > 0.0)) throw UsageError("reference gradient must be positive");
  if (grad_norm < 0.0) throw UsageError("gradient magnitude must be nonnegative");
  return std::exp(-kappa * grad_norm / grad_ref);
}

}  // namespace mrfgrid
