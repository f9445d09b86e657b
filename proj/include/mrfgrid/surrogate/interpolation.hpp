#pragma once

#include <vector>

#include "mrfgrid/surrogate/grid.hpp"

namespace mrfgrid {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int n);

/// Piecewise interpolation of E[S] over a surrogate grid and the path
/// integral of the interpolant.
///
/// D = 1: piecewise linear or cubic Hermite through (a_j, mean_j) with slopes
/// grad_j d_1. D = 2: 1-D interpolation in b along the two trails bracketing
/// a, then in a between them. Hermite slopes along b are J d_2; slopes along
/// a are J d_1 at the knots, carried linearly along each trail.
class Interpolant {
 public:
  Interpolant(const SurrogateGrid& grid, InterpolationScheme scheme);

  const SurrogateGrid& grid() const { return grid_; }
  InterpolationScheme scheme() const { return scheme_; }

  /// Throws DomainError when beta is outside P.
  Vec value(const ParamPoint& beta) const;

  /// log C(to) / C(from), the integral of the interpolant along the straight
  /// path from `from` to `to`.
  /// D = 1: closed form on each interval. D = 2: 16-node Gauss-Legendre on
  /// every piece of the path between knot lines, where the integrand is a
  /// polynomial of degree at most 6, so the rule is exact.
  double log_normalizer_ratio(const ParamPoint& from, const ParamPoint& to) const;

  /// Same integral with an n-node rule per piece (D = 2); for checks.
  double log_normalizer_ratio(const ParamPoint& from, const ParamPoint& to, int nodes) const;

 private:
  struct Line {
    std::vector<double> x;
    std::vector<Vec> y;
    std::vector<Vec> slope;
    std::vector<Vec> cross_slope;  // D = 2: slope along a, carried along the trail
    std::vector<double> cumulative;  // D = 1: integral of d_1' y from x[0]
  };

  Vec coords_checked(const ParamPoint& beta) const;
  Vec eval_line(const Line& line, double x, Vec* cross) const;
  Vec value_at(const Vec& coords) const;
  double line_integral_1d(double a) const;

  SurrogateGrid grid_;
  InterpolationScheme scheme_;
  std::vector<Line> lines_;
  std::vector<double> breaks_a_;
  std::vector<double> breaks_b_;
  QuadratureRule rule16_;
};

Vec interpolate(const SurrogateGrid& grid, InterpolationScheme scheme, const ParamPoint& beta);

double log_normalizer_ratio(const SurrogateGrid& grid, InterpolationScheme scheme,
                            const ParamPoint& beta_from, const ParamPoint& beta_to);


/// Cubic Hermite on [x0, x1]: value, and integral from x0 to x.
double hermite_value(double x0, double x1, double y0, double y1, double m0, double m1, double x);
double hermite_integral(double x0, double x1, double y0, double y1, double m0, double m1, double x);

}  // namespace mrfgrid
