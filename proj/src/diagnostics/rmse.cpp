#include <cmath>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/core/rng.hpp"
#include "mrfgrid/diagnostics/diagnostics.hpp"
#include "mrfgrid/mcmc/mcmc.hpp"
#include "mrfgrid/surrogate/interpolation.hpp"

namespace mrfgrid {

namespace {

constexpr std::uint64_t kTruthStreamBase = std::uint64_t{1} << 40;

}  // namespace

std::vector<ParamPoint> uniform_points(const ModelSpec& model, int n, std::uint64_t seed) {
  if (n < 1) throw UsageError("need at least one test point");
  Rng rng(seed, streams::kTestPoints);
  std::vector<ParamPoint> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ParamPoint beta(model.dim());
    for (int j = 0; j < model.dim(); ++j) {
      const Interval& b = model.bounds()[j];
      beta[j] = b.lo + b.width() * rng.uniform();
    }
    points.push_back(std::move(beta));
  }
  return points;
}

RmseReport interpolation_rmse(const SurrogateGrid& grid, InterpolationScheme scheme,
                              const MomentSource& truth, const std::vector<ParamPoint>& points) {
  if (points.empty()) throw UsageError("need at least one test point");
  if (!(truth.model() == grid.model())) {
    throw MismatchError("reference moments are for a different model");
  }
  const Interpolant surrogate(grid, scheme);
  Vec sum = Vec::Zero(grid.dim());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec residual = surrogate.value(points[i]) - truth.at(points[i], kTruthStreamBase + i).mean;
    sum += residual.cwiseAbs2();
  }
  RmseReport out;
  out.rmse = (sum / static_cast<double>(points.size())).cwiseSqrt();
  out.n_test = static_cast<int>(points.size());
  return out;
}

RmseReport interpolation_rmse(const SurrogateGrid& grid, InterpolationScheme scheme,
                              const MomentSource& truth, int n_test, std::uint64_t seed) {
  RmseReport out =
      interpolation_rmse(grid, scheme, truth, uniform_points(grid.model(), n_test, seed));
  out.seed = seed;
  return out;
}

}  // namespace mrfgrid
