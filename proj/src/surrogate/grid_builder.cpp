#include "mrfgrid/surrogate/grid_builder.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/core/parallel.hpp"
#include "mrfgrid/surrogate/step_rule.hpp"

namespace mrfgrid {

namespace {

constexpr std::uint64_t kCritStream = 1;

std::uint64_t walk_stream(std::uint64_t walk_id, std::uint64_t step) {
  return (walk_id << 20) | step;
}

GridSampling sampling_of(const MomentSource& source) {
  return GridSampling{source.budget(), source.seed(), source.exact()};
}

GridKnot make_knot(const MomentEstimate& est, const ParamPoint& beta, int spine) {
  GridKnot knot;
  knot.beta = beta;
  knot.mean = est.mean;
  knot.grad = 0.5 * (est.cov + est.cov.transpose());
  knot.n_samples = est.n_samples;
  knot.std_error = est.std_error;
  knot.spine_index = spine;
  return knot;
}

// Sign convention: the largest-magnitude component of each direction is positive.
Vec canonical_sign(Vec v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  return v[arg] < 0 ? Vec(-v) : v;
}

struct Node {
  Vec coords;
  MomentEstimate est;
};

class GradientWalker {
 public:
  GradientWalker(const ModelSpec& model, const ParamPoint& crit, const DirectionBasis& basis,
                 const MomentSource& source, const GradientGridOptions& options)
      : crit_(crit),
        basis_(basis),
        source_(source),
        options_(options),
        coverage_(coverage_box(model, crit, basis.directions)) {}

  ParamPoint point(const Vec& coords) const {
    ParamPoint p = crit_;
    for (Eigen::Index s = 0; s < coords.size(); ++s) p += coords[s] * basis_.directions[s];
    return p;
  }

  // Knots strictly beyond `start` along sign * d_s, ending on the coverage
  // boundary.
  std::vector<Node> walk(const Node& start, int s, int sign, std::uint64_t walk_id) const {
    const Vec& d = basis_.directions[s];
    const Interval box = coverage_[s];
    const double tol = 1e-12 * std::max(box.width(), 1e-300);
    auto step_from = [&](const MomentEstimate& est) {
      return step_scale(std::abs(d.dot(est.cov * d)), basis_.grad_ref, options_.kappa);
    };

    std::vector<Node> out;
    Vec c = start.coords;
    double previous = c[s];
    double step = step_from(start.est);
    for (std::uint64_t k = 0;; ++k) {
      c[s] = previous + sign * step;
      const bool outside = c[s] < box.lo || c[s] > box.hi;
      if (outside) {
        c[s] = std::clamp(c[s], box.lo, box.hi);
        if (std::abs(c[s] - previous) <= tol) break;
      }
      out.push_back(Node{c, source_.at(point(c), walk_stream(walk_id, k))});
      if (outside) break;
      if (out.size() > options_.max_knots) {
        throw InfeasibleError("gradient grid exceeds " + std::to_string(options_.max_knots) +
                              " knots; reduce kappa");
      }
      previous = c[s];
      step = step_from(out.back().est);
    }
    return out;
  }

 private:
  ParamPoint crit_;
  const DirectionBasis& basis_;
  const MomentSource& source_;
  GradientGridOptions options_;
  std::vector<Interval> coverage_;
};

}  // namespace

DirectionBasis directions_from_jacobian(const ModelSpec& model, const Mat& jacobian) {
  const int d = model.dim();
  if (jacobian.rows() != d || jacobian.cols() != d) {
    throw UsageError("Jacobian has the wrong dimension");
  }
  DirectionBasis basis;
  if (d == 1) {
    basis.directions = {make_vec(1.0)};
    basis.grad_ref = std::abs(jacobian(0, 0));
  } else {
    Mat scale = Mat::Zero(d, d);
    for (int j = 0; j < d; ++j) scale(j, j) = model.bounds()[j].width();
    const Mat scaled = scale * (0.5 * (jacobian + jacobian.transpose())) * scale;
    Eigen::SelfAdjointEigenSolver<Mat> solver(scaled);
    if (solver.info() != Eigen::Success) throw InfeasibleError("eigen decomposition failed");
    for (int s = d - 1; s >= 0; --s) {
      basis.directions.push_back(scale * canonical_sign(solver.eigenvectors().col(s)));
    }
    const Vec& d1 = basis.directions.front();
    basis.grad_ref = std::abs(d1.dot(jacobian * d1));
  }
  if (!std::isfinite(basis.grad_ref) || basis.grad_ref <= 1e-12) {
    throw InfeasibleError("covariance of S at beta_crit is degenerate; choose another start");
  }
  return basis;
}

DirectionBasis estimate_directions(const ModelSpec& model, const ParamPoint& beta_crit,
                                   const MomentSource& source) {
  if (!model.contains(beta_crit)) throw DomainError("beta_crit lies outside the parameter space");
  MomentEstimate est = source.at(beta_crit, kCritStream);
  DirectionBasis basis = directions_from_jacobian(model, est.cov);
  basis.at_crit = std::move(est);
  return basis;
}

SurrogateGrid build_equidistant_grid(const ModelSpec& model, const std::vector<int>& points_per_dim,
                                     const MomentSource& source, int threads) {
  const int d = model.dim();
  if (static_cast<int>(points_per_dim.size()) != d) {
    throw UsageError("need a point count for each of the " + std::to_string(d) + " dimension(s)");
  }
  for (int n : points_per_dim) {
    if (n < 2) throw UsageError("equidistant grids need at least 2 points per dimension");
  }
  for (const auto& b : model.bounds()) {
    if (!(b.width() > 0)) throw UsageError("parameter bounds must have positive width");
  }

  std::vector<std::vector<double>> axes;
  for (int j = 0; j < d; ++j) {
    axes.push_back(linspace(model.bounds()[j].lo, model.bounds()[j].hi, points_per_dim[j]));
  }
  const std::size_t inner = d == 2 ? axes[1].size() : 1;
  const std::size_t total = axes[0].size() * inner;

  std::vector<GridKnot> knots(total);
  parallel_for(total, threads, [&](std::size_t flat) {
    const std::size_t i = flat / inner;
    const std::size_t j = flat % inner;
    const ParamPoint beta = d == 2 ? make_vec(axes[0][i], axes[1][j]) : make_vec(axes[0][i]);
    knots[flat] = make_knot(source.at(beta, 1 + flat), beta, static_cast<int>(i));
    knots[flat].trail_index = static_cast<int>(j);
  });

  ParamPoint origin(d);
  std::vector<Vec> directions;
  for (int j = 0; j < d; ++j) {
    origin[j] = model.bounds()[j].lo;
    directions.push_back(Vec::Unit(d, j));
  }
  return SurrogateGrid(model, GridKind::Equidistant, origin, directions, 0.0, 0.0,
                       std::move(knots), sampling_of(source));
}

SurrogateGrid build_gradient_grid(const ModelSpec& model, const ParamPoint& beta_crit,
                                  const MomentSource& source, const GradientGridOptions& options) {
  if (!(options.kappa > 0.0)) throw UsageError("kappa must be positive");
  const DirectionBasis basis = estimate_directions(model, beta_crit, source);
  const GradientWalker walker(model, beta_crit, basis, source, options);
  const int d = model.dim();

  const Node crit{Vec::Zero(d), basis.at_crit};
  std::vector<Node> spine;
  {
    std::vector<std::vector<Node>> halves(2);
    parallel_for(2, options.threads, [&](std::size_t h) {
      halves[h] = walker.walk(crit, 0, h == 0 ? -1 : 1, 2 + h);
    });
    spine.assign(halves[0].rbegin(), halves[0].rend());
    spine.push_back(crit);
    spine.insert(spine.end(), halves[1].begin(), halves[1].end());
  }

  std::vector<GridKnot> knots;
  if (d == 1) {
    for (const auto& node : spine) knots.push_back(make_knot(node.est, walker.point(node.coords), 0));
  } else {
    std::vector<std::vector<Node>> halves(2 * spine.size());
    parallel_for(halves.size(), options.threads, [&](std::size_t w) {
      halves[w] = walker.walk(spine[w / 2], 1, w % 2 == 0 ? -1 : 1, 4 + w);
    });
    for (std::size_t i = 0; i < spine.size(); ++i) {
      const int spine_index = static_cast<int>(i);
      for (const auto* half : {&halves[2 * i], &halves[2 * i + 1]}) {
        for (const auto& node : *half) {
          knots.push_back(make_knot(node.est, walker.point(node.coords), spine_index));
        }
      }
      knots.push_back(make_knot(spine[i].est, walker.point(spine[i].coords), spine_index));
    }
  }
  if (knots.size() > options.max_knots) {
    throw InfeasibleError("gradient grid exceeds " + std::to_string(options.max_knots) +
                          " knots; reduce kappa");
  }
  return SurrogateGrid(model, GridKind::GradientBased, beta_crit, basis.directions, options.kappa,
                       basis.grad_ref, std::move(knots), sampling_of(source));
}

KappaSearchResult tune_kappa(const ModelSpec& model, const ParamPoint& beta_crit, int target_knots,
                             const MomentSource& source, int threads) {
  if (target_knots < 3) throw UsageError("a gradient grid has at least 3 knots");
  GradientGridOptions options;
  options.threads = threads;
  options.max_knots = 2 * static_cast<std::size_t>(target_knots) + 10;
  int evaluations = 0;

  // nullopt when the grid has more than target_knots knots.
  auto attempt = [&](double kappa) -> std::optional<SurrogateGrid> {
    ++evaluations;
    options.kappa = kappa;
    try {
      SurrogateGrid grid = build_gradient_grid(model, beta_crit, source, options);
      if (grid.size() > static_cast<std::size_t>(target_knots)) return std::nullopt;
      return grid;
    } catch (const InfeasibleError&) {
      // Only the knot limit can fail here: the start was checked below.
      return std::nullopt;
    }
  };
  estimate_directions(model, beta_crit, source);

  double lo = 1.0;
  double hi = 1.0;
  std::optional<SurrogateGrid> best = attempt(1.0);
  if (best) {
    for (int i = 0;; ++i) {
      if (i == 60) throw InfeasibleError("knot budget unreachable for any kappa");
      hi = lo * 2.0;
      auto grid = attempt(hi);
      if (!grid) break;
      lo = hi;
      best = std::move(grid);
    }
  } else {
    for (int i = 0;; ++i) {
      if (i == 60) throw InfeasibleError("knot budget too small for any kappa");
      lo = hi / 2.0;
      best = attempt(lo);
      if (best) break;
      hi = lo;
    }
  }
  while (hi / lo > 1.0 + 1e-3) {
    const double mid = std::sqrt(lo * hi);
    auto grid = attempt(mid);
    if (grid) {
      lo = mid;
      best = std::move(grid);
    } else {
      hi = mid;
    }
  }

  const auto found = static_cast<double>(best->size());
  if (std::abs(found - target_knots) > 0.1 * target_knots) {
    throw InfeasibleError("closest gradient grid has " + std::to_string(best->size()) +
                          " knots, requested " + std::to_string(target_knots));
  }
  return KappaSearchResult{lo, std::move(*best), evaluations};
}

}  // namespace mrfgrid
