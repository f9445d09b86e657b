#include "mrfgrid/surrogate/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "mrfgrid/core/errors.hpp"

namespace mrfgrid {

double hermite_value(double x0, double x1, double y0, double y1, double m0, double m1, double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double u = 1.0 - t;
  return (1.0 + 2.0 * t) * u * u * y0 + t * u * u * h * m0 + t * t * (3.0 - 2.0 * t) * y1 +
         t * t * (t - 1.0) * h * m1;
}

double hermite_integral(double x0, double x1, double y0, double y1, double m0, double m1,
                        double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double t4 = t3 * t;
  return h * (y0 * (t - t3 + 0.5 * t4) + h * m0 * (0.5 * t2 - 2.0 * t3 / 3.0 + 0.25 * t4) +
              y1 * (t3 - 0.5 * t4) + h * m1 * (0.25 * t4 - t3 / 3.0));
}

namespace {

double linear_value(double x0, double x1, double y0, double y1, double x) {
  const double t = (x - x0) / (x1 - x0);
  return (1.0 - t) * y0 + t * y1;
}

double linear_integral(double x0, double x1, double y0, double y1, double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  return h * (y0 * (t - 0.5 * t * t) + y1 * 0.5 * t * t);
}

std::size_t bracket(const std::vector<double>& x, double v) {
  const auto it = std::upper_bound(x.begin(), x.end(), v);
  const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x.begin() - 1, 0));
  return std::min(i, x.size() - 2);
}

}  // namespace

Interpolant::Interpolant(const SurrogateGrid& grid, InterpolationScheme scheme)
    : grid_(grid), scheme_(scheme), rule16_(gauss_legendre(16)) {
  const auto& knots = grid_.knots();
  const auto& dirs = grid_.directions();
  if (grid_.dim() == 1) {
    Line line;
    for (std::size_t pos = 0; pos < grid_.line().size(); ++pos) {
      const GridKnot& knot = knots[grid_.line()[pos]];
      line.x.push_back(grid_.spine()[pos]);
      line.y.push_back(knot.mean);
      line.slope.push_back(knot.grad * dirs[0]);
    }
    line.cumulative.assign(line.x.size(), 0.0);
    for (std::size_t i = 0; i + 1 < line.x.size(); ++i) {
      const double y0 = dirs[0].dot(line.y[i]);
      const double y1 = dirs[0].dot(line.y[i + 1]);
      const double piece =
          scheme_ == InterpolationScheme::Hermite
              ? hermite_integral(line.x[i], line.x[i + 1], y0, y1, dirs[0].dot(line.slope[i]),
                                 dirs[0].dot(line.slope[i + 1]), line.x[i + 1])
              : linear_integral(line.x[i], line.x[i + 1], y0, y1, line.x[i + 1]);
      line.cumulative[i + 1] = line.cumulative[i] + piece;
    }
    lines_.push_back(std::move(line));
    breaks_a_ = grid_.spine();
    return;
  }

  for (const auto& trail : grid_.trails()) {
    Line line;
    line.x = trail.b;
    for (int k : trail.knots) {
      line.y.push_back(knots[k].mean);
      line.slope.push_back(knots[k].grad * dirs[1]);
      line.cross_slope.push_back(knots[k].grad * dirs[0]);
    }
    breaks_b_.insert(breaks_b_.end(), trail.b.begin(), trail.b.end());
    lines_.push_back(std::move(line));
  }
  breaks_a_ = grid_.spine();
  std::sort(breaks_b_.begin(), breaks_b_.end());
  breaks_b_.erase(std::unique(breaks_b_.begin(), breaks_b_.end()), breaks_b_.end());
}

Vec Interpolant::coords_checked(const ParamPoint& beta) const {
  if (beta.size() != grid_.dim() || !grid_.model().contains(beta, 1e-12)) {
    throw DomainError("interpolation point outside the parameter space");
  }
  Vec c = grid_.coordinates(beta);
  for (int s = 0; s < grid_.dim(); ++s) {
    c[s] = std::clamp(c[s], grid_.coverage()[s].lo, grid_.coverage()[s].hi);
  }
  return c;
}

Vec Interpolant::eval_line(const Line& line, double x, Vec* cross) const {
  const std::size_t i = bracket(line.x, x);
  const double x0 = line.x[i];
  const double x1 = line.x[i + 1];
  const auto d = line.y[i].size();
  Vec out(d);
  for (Eigen::Index c = 0; c < d; ++c) {
    out[c] = scheme_ == InterpolationScheme::Hermite
                 ? hermite_value(x0, x1, line.y[i][c], line.y[i + 1][c], line.slope[i][c],
                                 line.slope[i + 1][c], x)
                 : linear_value(x0, x1, line.y[i][c], line.y[i + 1][c], x);
  }
  if (cross != nullptr) {
    *cross = Vec(d);
    for (Eigen::Index c = 0; c < d; ++c) {
      (*cross)[c] = linear_value(x0, x1, line.cross_slope[i][c], line.cross_slope[i + 1][c], x);
    }
  }
  return out;
}

Vec Interpolant::value_at(const Vec& coords) const {
  if (grid_.dim() == 1) return eval_line(lines_[0], coords[0], nullptr);

  const auto& spine = grid_.spine();
  const std::size_t i = bracket(spine, coords[0]);
  Vec s0;
  Vec s1;
  const Vec v0 = eval_line(lines_[i], coords[1], &s0);
  const Vec v1 = eval_line(lines_[i + 1], coords[1], &s1);
  Vec out(v0.size());
  for (Eigen::Index c = 0; c < v0.size(); ++c) {
    out[c] = scheme_ == InterpolationScheme::Hermite
                 ? hermite_value(spine[i], spine[i + 1], v0[c], v1[c], s0[c], s1[c], coords[0])
                 : linear_value(spine[i], spine[i + 1], v0[c], v1[c], coords[0]);
  }
  return out;
}

Vec Interpolant::value(const ParamPoint& beta) const { return value_at(coords_checked(beta)); }

double Interpolant::line_integral_1d(double a) const {
  const Line& line = lines_[0];
  const Vec& dir = grid_.directions()[0];
  const std::size_t i = bracket(line.x, a);
  const double y0 = dir.dot(line.y[i]);
  const double y1 = dir.dot(line.y[i + 1]);
  const double partial =
      scheme_ == InterpolationScheme::Hermite
          ? hermite_integral(line.x[i], line.x[i + 1], y0, y1, dir.dot(line.slope[i]),
                             dir.dot(line.slope[i + 1]), a)
          : linear_integral(line.x[i], line.x[i + 1], y0, y1, a);
  return line.cumulative[i] + partial;
}

double Interpolant::log_normalizer_ratio(const ParamPoint& from, const ParamPoint& to) const {
  return log_normalizer_ratio(from, to, 16);
}

double Interpolant::log_normalizer_ratio(const ParamPoint& from, const ParamPoint& to,
                                         int nodes) const {
  const Vec c_from = coords_checked(from);
  const Vec c_to = coords_checked(to);
  if (grid_.dim() == 1) return line_integral_1d(c_to[0]) - line_integral_1d(c_from[0]);

  const QuadratureRule rule = nodes == 16 ? rule16_ : gauss_legendre(nodes);
  const Vec delta_beta = to - from;
  const Vec delta = c_to - c_from;

  std::vector<double> cuts{0.0, 1.0};
  auto add_crossings = [&](const std::vector<double>& breaks, int s) {
    if (delta[s] == 0.0) return;
    for (double x : breaks) {
      const double t = (x - c_from[s]) / delta[s];
      if (t > 0.0 && t < 1.0) cuts.push_back(t);
    }
  };
  add_crossings(breaks_a_, 0);
  add_crossings(breaks_b_, 1);
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double t0 = cuts[p];
    const double t1 = cuts[p + 1];
    if (!(t1 > t0)) continue;
    const double half = 0.5 * (t1 - t0);
    const double mid = 0.5 * (t1 + t0);
    double piece = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const Vec c = c_from + (mid + half * rule.nodes[q]) * delta;
      piece += rule.weights[q] * delta_beta.dot(value_at(c));
    }
    total += half * piece;
  }
  return total;
}

Vec interpolate(const SurrogateGrid& grid, InterpolationScheme scheme, const ParamPoint& beta) {
  return Interpolant(grid, scheme).value(beta);
}

double log_normalizer_ratio(const SurrogateGrid& grid, InterpolationScheme scheme,
                            const ParamPoint& beta_from, const ParamPoint& beta_to) {
  return Interpolant(grid, scheme).log_normalizer_ratio(beta_from, beta_to);
}

}  // namespace mrfgrid
