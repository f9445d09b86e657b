#pragma once

#include <vector>

#include "mrfgrid/surrogate/grid.hpp"
#include "mrfgrid/surrogate/moment_source.hpp"

namespace mrfgrid {

/// Direction basis for the gradient grid.
///
/// D = 1: d_1 = 1 and grad_ref is the variance of S at beta_crit.
/// D = 2: the Jacobian estimate J (covariance of S) is rescaled to the unit
/// box, Jt = W J W with W = diag(widths of P). Its unit eigenvectors u_s,
/// sorted by descending eigenvalue, are mapped back as d_s = W u_s, and
/// grad_ref = d_1' J d_1. A step of length n along d_s therefore moves a
/// fraction n of the width of P along u_s.
struct DirectionBasis {
  std::vector<Vec> directions;
  double grad_ref = 0.0;
  MomentEstimate at_crit;
};

/// Basis from a given Jacobian (covariance of S) at beta_crit.
DirectionBasis directions_from_jacobian(const ModelSpec& model, const Mat& jacobian);

DirectionBasis estimate_directions(const ModelSpec& model, const ParamPoint& beta_crit,
                                   const MomentSource& source);

/// Tensor grid over P including the bounds, points_per_dim[j] >= 2 values
/// per dimension.
SurrogateGrid build_equidistant_grid(const ModelSpec& model, const std::vector<int>& points_per_dim,
                                     const MomentSource& source, int threads = 1);

struct GradientGridOptions {
  double kappa = 1.0;
  /// Hard limit on the total number of knots.
  std::size_t max_knots = 20000;
  int threads = 1;
};

/// Walks from beta_crit along -d_s and +d_s for s = 1..D, from every knot
/// found so far, with step length step_scale(|d_s' J d_s|, grad_ref, kappa)
/// evaluated at the current knot. The first step that leaves the coverage box
/// is clamped onto its boundary and kept as a knot.
SurrogateGrid build_gradient_grid(const ModelSpec& model, const ParamPoint& beta_crit,
                                  const MomentSource& source, const GradientGridOptions& options);

struct KappaSearchResult {
  double kappa = 0.0;
  SurrogateGrid grid;
  int evaluations = 0;
};

/// Bisection on log(kappa) for the largest kappa whose grid has at most
/// `target_knots` knots (knot count grows with kappa). Throws InfeasibleError
/// unless the result lies within 10% of the target.
KappaSearchResult tune_kappa(const ModelSpec& model, const ParamPoint& beta_crit, int target_knots,
                             const MomentSource& source, int threads = 1);

}  // namespace mrfgrid
