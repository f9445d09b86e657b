#include <cmath>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/samplers/samplers.hpp"

namespace mrfgrid {

ForwardSampler::ForwardSampler(const ModelSpec& model)
    : model_(model), lattice_(model.height(), model.width()), sw_(lattice_) {}

void ForwardSampler::step(std::span<int> labels, const ParamPoint& beta, Rng& rng) {
  if (model_.family() == Family::Potts) {
    sw_.step(labels, model_.k(), beta[0], rng);
  } else {
    gibbs_sweep(lattice_, model_, labels, beta, rng);
  }
}

void ForwardSampler::run(std::span<int> labels, const ParamPoint& beta, int steps, Rng& rng) {
  for (int s = 0; s < steps; ++s) step(labels, beta, rng);
}

LabelField simulate_field(const ModelSpec& model, const ParamPoint& beta, int steps, Rng& rng) {
  if (steps < 0) throw UsageError("number of sampler steps must be nonnegative");
  LabelField z = random_field(model, rng);
  ForwardSampler sampler(model);
  sampler.run(z.mutable_labels(), beta, steps, rng);
  return z;
}

void SamplerBudget::validate() const {
  if (n_samples < 2) throw UsageError("moment estimation needs n_samples >= 2");
  if (burn_in < 0) throw UsageError("burn-in must be nonnegative");
  if (thin < 1) throw UsageError("thinning interval must be >= 1");
}

MomentEstimate moments_of(const std::vector<Vec>& draws) {
  if (draws.size() < 2) throw UsageError("moments need at least two draws");
  const auto d = draws.front().size();
  MomentEstimate est;
  est.n_samples = static_cast<int>(draws.size());
  est.mean = Vec::Zero(d);
  for (const auto& s : draws) est.mean += s;
  est.mean /= static_cast<double>(draws.size());
  est.cov = Mat::Zero(d, d);
  for (const auto& s : draws) {
    const Vec c = s - est.mean;
    est.cov += c * c.transpose();
  }
  est.cov /= static_cast<double>(draws.size() - 1);
  est.std_error = (est.cov.diagonal() / static_cast<double>(draws.size())).cwiseSqrt();
  return est;
}

MomentEstimate estimate_moments(const ModelSpec& model, const ParamPoint& beta,
                                const SamplerBudget& budget, Rng& rng) {
  budget.validate();
  if (beta.size() != model.dim()) throw UsageError("parameter dimension mismatch");
  ForwardSampler sampler(model);
  LabelField z = random_field(model, rng);
  auto& labels = z.mutable_labels();
  sampler.run(labels, beta, budget.burn_in, rng);

  std::vector<Vec> draws;
  draws.reserve(budget.n_samples);
  for (int i = 0; i < budget.n_samples; ++i) {
    sampler.run(labels, beta, budget.thin, rng);
    draws.push_back(sufficient_stat(sampler.lattice(), model.family(), labels));
  }
  MomentEstimate est = moments_of(draws);
  est.beta = beta;
  est.burn_in = budget.burn_in;
  return est;
}

}  // namespace mrfgrid
