#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/mcmc/mcmc.hpp"
#include "mrfgrid/samplers/samplers.hpp"

namespace mrfgrid {

namespace {

ParamPoint clamp_to(const ModelSpec& model, ParamPoint beta) {
  for (int j = 0; j < model.dim(); ++j) {
    beta[j] = std::clamp(beta[j], model.bounds()[j].lo, model.bounds()[j].hi);
  }
  return beta;
}

}  // namespace

ParamPoint analytic_beta_crit(const ModelSpec& model) {
  if (model.family() == Family::Potts) {
    return clamp_to(model, make_vec(std::log1p(std::sqrt(static_cast<double>(model.k())))));
  }
  return clamp_to(model, make_vec(0.0, std::log1p(std::sqrt(2.0))));
}

ParamPoint find_beta_crit(const ModelSpec& model, const Vec& target,
                          const StochasticApproximationOptions& options, Rng& rng) {
  const int dim = model.dim();
  if (target.size() != dim) throw UsageError("target statistic has the wrong dimension");
  if (options.iterations < 2 || options.steps_averaged < 2 || options.steps_discarded < 0 ||
      !(options.gain > 0.0)) {
    throw UsageError("invalid stochastic approximation options");
  }
  const double edges = static_cast<double>(model.edge_count());
  const bool attainable =
      model.family() == Family::Potts
          ? (target[0] > 0.0 && target[0] < edges)
          : (std::abs(target[0]) < model.pixels() && target[1] > 0.0 && target[1] < edges);
  if (!attainable) throw UsageError("target statistic is not attainable in the interior");

  ForwardSampler sampler(model);
  LabelField field = random_field(model, rng);
  std::vector<int>& labels = field.mutable_labels();
  ParamPoint beta = model.center();
  Vec max_step(dim);
  for (int j = 0; j < dim; ++j) max_step[j] = 0.25 * model.bounds()[j].width();

  Vec running = Vec::Zero(dim);
  int averaged = 0;
  const int half = options.iterations / 2;
  std::vector<Vec> draws(options.steps_averaged);
  // Preconditioner from earlier iterations only: reusing the draws behind the
  // current mean would bias the fixed point.
  Mat precond;
  for (int m = 1; m <= options.iterations; ++m) {
    sampler.run(labels, beta, options.steps_discarded, rng);
    for (auto& d : draws) {
      sampler.step(labels, beta, rng);
      d = sufficient_stat(sampler.lattice(), model.family(), labels);
    }
    const MomentEstimate est = moments_of(draws);
    Mat cov = est.cov;
    for (int j = 0; j < dim; ++j) cov(j, j) += 1e-6 * (1.0 + cov(j, j));
    if (m == 1) precond = cov;

    Vec step = precond.ldlt().solve(target - est.mean) * (options.gain / m);
    for (int j = 0; j < dim; ++j) step[j] = std::clamp(step[j], -max_step[j], max_step[j]);
    beta = clamp_to(model, beta + step);

    const double w = std::max(1.0 / m, 0.1);
    precond = (1.0 - w) * precond + w * cov;
    if (m > half) {
      running += beta;
      ++averaged;
    }
    if (m > half && step.norm() < options.tolerance) break;
  }
  return clamp_to(model, running / static_cast<double>(averaged));
}

}  // namespace mrfgrid
