#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "mrfgrid/core/model.hpp"
#include "mrfgrid/samplers/samplers.hpp"

namespace mrfgrid {

enum class GridKind { Equidistant, GradientBased };
enum class InterpolationScheme { PiecewiseLinear, Hermite };

std::string_view to_string(GridKind kind);
GridKind parse_grid_kind(std::string_view text);
std::string_view to_string(InterpolationScheme scheme);
InterpolationScheme parse_scheme(std::string_view text);

/// One precomputed point: E[S] and its Jacobian (covariance of S) at beta.
struct GridKnot {
  ParamPoint beta;
  Vec mean;
  Mat grad;
  int n_samples = 0;
  Vec std_error;
  int spine_index = 0;
  int trail_index = 0;
};

/// How the knot moments were produced.
struct GridSampling {
  SamplerBudget budget;
  std::uint64_t seed = 0;
  bool exact = false;
};

/// Knots organised along direction coordinates. A point is written as
/// beta = origin + a * d_1 (+ b * d_2). For D = 1 the knots form one ordered
/// line in a. For D = 2 the knots sharing a spine index lie on a trail of
/// constant a, ordered in b.
///
/// The grid covers the coordinate box spanned by the corners of P: the spine
/// reaches both ends of the box in a and every trail both ends in b, so each
/// beta in P is bracketed by knots. For axis-aligned directions that box is
/// P itself.
class SurrogateGrid {
 public:
  struct Trail {
    double a = 0.0;
    std::vector<double> b;
    std::vector<int> knots;
  };

  SurrogateGrid(ModelSpec model, GridKind kind, ParamPoint origin, std::vector<Vec> directions,
                double kappa, double grad_ref, std::vector<GridKnot> knots, GridSampling sampling);

  const ModelSpec& model() const { return model_; }
  GridKind kind() const { return kind_; }
  int dim() const { return model_.dim(); }
  /// beta_crit for gradient grids, the lower corner of P for equidistant ones.
  const ParamPoint& origin() const { return origin_; }
  const std::vector<Vec>& directions() const { return directions_; }
  double kappa() const { return kappa_; }
  double grad_ref() const { return grad_ref_; }
  const std::vector<GridKnot>& knots() const { return knots_; }
  std::size_t size() const { return knots_.size(); }
  const GridSampling& sampling() const { return sampling_; }

  /// Direction coordinates (a[, b]) of beta.
  Vec coordinates(const ParamPoint& beta) const;
  ParamPoint point(const Vec& coords) const;

  /// Coverage box in direction coordinates: [lo, hi] per direction.
  const std::vector<Interval>& coverage() const { return coverage_; }

  /// Spine positions (a of each trail, or of each knot when D = 1).
  const std::vector<double>& spine() const { return spine_; }
  /// D = 2 only.
  const std::vector<Trail>& trails() const { return trails_; }
  /// Knot indices in spine order (D = 1 only).
  const std::vector<int>& line() const { return line_; }

 private:
  void index_knots();

  ModelSpec model_;
  GridKind kind_;
  ParamPoint origin_;
  std::vector<Vec> directions_;
  Mat basis_inverse_;
  double kappa_;
  double grad_ref_;
  std::vector<GridKnot> knots_;
  GridSampling sampling_;
  std::vector<Interval> coverage_;
  std::vector<double> spine_;
  std::vector<Trail> trails_;
  std::vector<int> line_;
};

/// Coverage box of P in the coordinates of `directions` around `origin`.
std::vector<Interval> coverage_box(const ModelSpec& model, const ParamPoint& origin,
                                   const std::vector<Vec>& directions);

}  // namespace mrfgrid
