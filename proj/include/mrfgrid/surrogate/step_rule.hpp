#pragma once

namespace mrfgrid {

/// Step length between neighbouring gradient-grid knots:
/// exp(-kappa * grad_norm / grad_ref). Positive, at most 1 for
/// grad_norm >= 0, strictly decreasing in grad_norm and equal to 1 where the
/// gradient vanishes.
double step_scale(double grad_norm, double grad_ref, double kappa);

}  // namespace mrfgrid
