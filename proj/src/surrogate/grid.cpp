#include "mrfgrid/surrogate/grid.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "mrfgrid/core/errors.hpp"

namespace mrfgrid {

std::string_view to_string(GridKind kind) {
  return kind == GridKind::Equidistant ? "equidistant" : "gradient";
}

GridKind parse_grid_kind(std::string_view text) {
  if (text == "equidistant") return GridKind::Equidistant;
  if (text == "gradient") return GridKind::GradientBased;
  throw UsageError("unknown grid kind '" + std::string(text) + "'");
}

std::string_view to_string(InterpolationScheme scheme) {
  return scheme == InterpolationScheme::PiecewiseLinear ? "linear" : "hermite";
}

InterpolationScheme parse_scheme(std::string_view text) {
  if (text == "linear") return InterpolationScheme::PiecewiseLinear;
  if (text == "hermite") return InterpolationScheme::Hermite;
  throw UsageError("unknown interpolation scheme '" + std::string(text) + "'");
}

namespace {

Mat basis_matrix(const std::vector<Vec>& directions) {
  const auto d = static_cast<Eigen::Index>(directions.size());
  Mat basis(d, d);
  for (Eigen::Index s = 0; s < d; ++s) basis.col(s) = directions[s];
  return basis;
}

Mat invert_basis(const std::vector<Vec>& directions) {
  const Mat basis = basis_matrix(directions);
  const double det = basis.determinant();
  if (!std::isfinite(det) || std::abs(det) < 1e-300) {
    throw UsageError("grid directions are linearly dependent");
  }
  return basis.inverse();
}

double span_tolerance(const Interval& box) { return 1e-9 * std::max(box.width(), 1e-12); }

}  // namespace

std::vector<Interval> coverage_box(const ModelSpec& model, const ParamPoint& origin,
                                   const std::vector<Vec>& directions) {
  const int d = model.dim();
  const Mat inverse = invert_basis(directions);
  std::vector<Interval> box(d, Interval{INFINITY, -INFINITY});
  for (int corner = 0; corner < (1 << d); ++corner) {
    ParamPoint p(d);
    for (int j = 0; j < d; ++j) {
      p[j] = (corner >> j) & 1 ? model.bounds()[j].hi : model.bounds()[j].lo;
    }
    const Vec c = inverse * (p - origin);
    for (int s = 0; s < d; ++s) {
      box[s].lo = std::min(box[s].lo, c[s]);
      box[s].hi = std::max(box[s].hi, c[s]);
    }
  }
  return box;
}

SurrogateGrid::SurrogateGrid(ModelSpec model, GridKind kind, ParamPoint origin,
                             std::vector<Vec> directions, double kappa, double grad_ref,
                             std::vector<GridKnot> knots, GridSampling sampling)
    : model_(std::move(model)),
      kind_(kind),
      origin_(std::move(origin)),
      directions_(std::move(directions)),
      kappa_(kappa),
      grad_ref_(grad_ref),
      knots_(std::move(knots)),
      sampling_(sampling) {
  const int d = model_.dim();
  if (origin_.size() != d) throw UsageError("grid origin has the wrong dimension");
  if (static_cast<int>(directions_.size()) != d) throw UsageError("need one direction per dimension");
  for (const auto& dir : directions_) {
    if (dir.size() != d) throw UsageError("grid direction has the wrong dimension");
  }
  for (auto& knot : knots_) {
    if (knot.beta.size() != d || knot.mean.size() != d || knot.grad.rows() != d ||
        knot.grad.cols() != d) {
      throw UsageError("grid knot has the wrong dimension");
    }
    if (knot.std_error.size() == 0) knot.std_error = Vec::Zero(d);
    if (knot.std_error.size() != d) throw UsageError("grid knot std_error has the wrong dimension");
  }
  basis_inverse_ = invert_basis(directions_);
  coverage_ = coverage_box(model_, origin_, directions_);
  index_knots();
}

Vec SurrogateGrid::coordinates(const ParamPoint& beta) const {
  return basis_inverse_ * (beta - origin_);
}

ParamPoint SurrogateGrid::point(const Vec& coords) const {
  ParamPoint p = origin_;
  for (int s = 0; s < dim(); ++s) p += coords[s] * directions_[s];
  return p;
}

void SurrogateGrid::index_knots() {
  const auto too_small = [] { return InfeasibleError("grid needs at least two knots per line"); };
  const auto uncovered = [] {
    return UsageError("grid knots do not reach the boundary of the parameter space");
  };

  if (dim() == 1) {
    if (knots_.size() < 2) throw too_small();
    line_.resize(knots_.size());
    std::iota(line_.begin(), line_.end(), 0);
    std::vector<double> a(knots_.size());
    for (std::size_t i = 0; i < knots_.size(); ++i) a[i] = coordinates(knots_[i].beta)[0];
    std::stable_sort(line_.begin(), line_.end(), [&](int x, int y) { return a[x] < a[y]; });
    spine_.clear();
    for (std::size_t pos = 0; pos < line_.size(); ++pos) {
      spine_.push_back(a[line_[pos]]);
      knots_[line_[pos]].spine_index = static_cast<int>(pos);
      knots_[line_[pos]].trail_index = 0;
      if (pos > 0 && !(spine_[pos] > spine_[pos - 1])) {
        throw UsageError("grid knots must be strictly ordered");
      }
    }
    const double tol = span_tolerance(coverage_[0]);
    if (spine_.front() > coverage_[0].lo + tol || spine_.back() < coverage_[0].hi - tol) {
      throw uncovered();
    }
    return;
  }

  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < knots_.size(); ++i) groups[knots_[i].spine_index].push_back(i);
  if (groups.size() < 2) throw too_small();

  trails_.clear();
  for (auto& [spine_index, members] : groups) {
    if (members.size() < 2) throw too_small();
    Trail trail;
    std::vector<double> b(knots_.size());
    double a_sum = 0.0;
    for (int i : members) {
      const Vec c = coordinates(knots_[i].beta);
      a_sum += c[0];
      b[i] = c[1];
    }
    trail.a = a_sum / static_cast<double>(members.size());
    for (int i : members) {
      const double a_i = coordinates(knots_[i].beta)[0];
      if (std::abs(a_i - trail.a) > 1e-7 * std::max(coverage_[0].width(), 1e-12)) {
        throw UsageError("knots of a trail must share the spine coordinate");
      }
    }
    std::stable_sort(members.begin(), members.end(), [&](int x, int y) { return b[x] < b[y]; });
    for (int i : members) {
      if (!trail.b.empty() && !(b[i] > trail.b.back())) {
        throw UsageError("grid knots must be strictly ordered along each trail");
      }
      trail.b.push_back(b[i]);
      trail.knots.push_back(i);
    }
    trails_.push_back(std::move(trail));
  }
  std::stable_sort(trails_.begin(), trails_.end(),
                   [](const Trail& x, const Trail& y) { return x.a < y.a; });

  spine_.clear();
  const double tol_a = span_tolerance(coverage_[0]);
  const double tol_b = span_tolerance(coverage_[1]);
  for (std::size_t t = 0; t < trails_.size(); ++t) {
    if (t > 0 && !(trails_[t].a > trails_[t - 1].a)) {
      throw UsageError("grid trails must be strictly ordered along the spine");
    }
    spine_.push_back(trails_[t].a);
    for (std::size_t j = 0; j < trails_[t].knots.size(); ++j) {
      knots_[trails_[t].knots[j]].spine_index = static_cast<int>(t);
      knots_[trails_[t].knots[j]].trail_index = static_cast<int>(j);
    }
    if (trails_[t].b.front() > coverage_[1].lo + tol_b ||
        trails_[t].b.back() < coverage_[1].hi - tol_b) {
      throw uncovered();
    }
  }
  if (spine_.front() > coverage_[0].lo + tol_a || spine_.back() < coverage_[0].hi - tol_a) {
    throw uncovered();
  }
}

}  // namespace mrfgrid
