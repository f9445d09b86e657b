#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "chain_loop.hpp"
#include "mrfgrid/samplers/samplers.hpp"

namespace mrfgrid {

namespace {

double quantile(std::vector<double> sorted_values, double p) {
  std::sort(sorted_values.begin(), sorted_values.end());
  const double h = (static_cast<double>(sorted_values.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted_values.size() - 1);
  return sorted_values[lo] + (h - std::floor(h)) * (sorted_values[hi] - sorted_values[lo]);
}

struct NoiseState {
  std::vector<double> mu;
  std::vector<double> sigma2;
};

void sweep_labels(const Lattice& lattice, std::span<const double> image, std::span<int> labels,
                  int k, double beta, const NoiseState& noise, Rng& rng) {
  std::vector<double> log_scale(k);
  std::vector<double> inv_two_var(k);
  for (int j = 0; j < k; ++j) {
    log_scale[j] = -0.5 * std::log(noise.sigma2[j]);
    inv_two_var[j] = 0.5 / noise.sigma2[j];
  }
  std::vector<double> weight(k);
  for (int colour = 0; colour < 2; ++colour) {
    for (int site = 0; site < lattice.size(); ++site) {
      if (lattice.color(site) != colour) continue;
      std::fill(weight.begin(), weight.end(), 0.0);
      for (int nb : lattice.neighbors(site)) weight[labels[nb] - 1] += beta;
      double top = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < k; ++j) {
        const double r = image[site] - noise.mu[j];
        weight[j] += log_scale[j] - r * r * inv_two_var[j];
        top = std::max(top, weight[j]);
      }
      double total = 0.0;
      for (int j = 0; j < k; ++j) {
        weight[j] = std::exp(weight[j] - top);
        total += weight[j];
      }
      double u = rng.uniform() * total;
      int pick = k - 1;
      for (int j = 0; j < k; ++j) {
        u -= weight[j];
        if (u < 0.0) {
          pick = j;
          break;
        }
      }
      labels[site] = pick + 1;
    }
  }
}

}  // namespace

NoisePrior default_noise_prior(std::span<const double> image, int k) {
  if (image.empty()) throw UsageError("image is empty");
  if (k < 1) throw UsageError("number of labels must be positive");
  std::vector<double> values(image.begin(), image.end());
  NoisePrior prior;
  for (int j = 1; j <= k; ++j) prior.mu0.push_back(quantile(values, (j - 0.5) / k));
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double spread = (*hi - *lo) / (2.0 * k);
  // prior mean of sigma^2 is b0 / (a0 - 1)
  prior.b0 = spread > 0.0 ? spread * spread * (prior.a0 - 1.0) : 1.0;
  return prior;
}

void draw_noise_params(const NoisePrior& prior, int label, std::span<const double> values,
                       Rng& rng, double& mu, double& sigma2) {
  const double mu0 = prior.mu0.at(static_cast<std::size_t>(label - 1));
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double y : values) mean += y;
  if (n > 0) mean /= n;
  double ss = 0.0;
  for (double y : values) ss += (y - mean) * (y - mean);

  const double lambda_n = prior.lambda0 + n;
  const double mu_n = (prior.lambda0 * mu0 + n * mean) / lambda_n;
  const double a_n = prior.a0 + 0.5 * n;
  const double b_n =
      prior.b0 + 0.5 * ss + 0.5 * prior.lambda0 * n * (mean - mu0) * (mean - mu0) / lambda_n;
  sigma2 = rng.inverse_gamma(a_n, b_n);
  mu = rng.normal(mu_n, std::sqrt(sigma2 / lambda_n));
}

Chain run_hidden_potts(std::span<const double> image, const ModelSpec& model,
                       const HiddenPottsConfig& hidden, const RunConfig& config) {
  config.validate();
  if (model.family() != Family::Potts) throw MismatchError("hidden model must be Potts");
  if (image.size() != static_cast<std::size_t>(model.pixels())) {
    throw MismatchError("image size does not match the lattice");
  }
  const int k = model.k();
  const NoisePrior prior = hidden.prior.value_or(default_noise_prior(image, k));
  if (static_cast<int>(prior.mu0.size()) != k) throw UsageError("prior needs one mean per label");
  if (!(prior.lambda0 > 0 && prior.a0 > 0 && prior.b0 > 0)) {
    throw UsageError("prior hyperparameters must be positive");
  }

  std::unique_ptr<Interpolant> surrogate;
  if (hidden.update == BetaUpdate::Surrogate && !hidden.fixed_beta) {
    if (hidden.grid == nullptr) throw UsageError("surrogate update needs a grid");
    check_grid_matches(model, *hidden.grid);
    surrogate = std::make_unique<Interpolant>(*hidden.grid, hidden.scheme);
  }

  RunConfig run = config;
  if (hidden.fixed_beta) run.beta_init = *hidden.fixed_beta;
  detail::BetaChain chain(model, run);
  ForwardSampler sampler(model);
  const Lattice& lattice = sampler.lattice();
  Rng label_rng(config.seed, streams::kLabels);
  Rng aux_rng(config.seed, streams::kAux);

  NoiseState noise;
  noise.mu = hidden.mu_init.value_or(prior.mu0);
  if (static_cast<int>(noise.mu.size()) != k) throw UsageError("need one initial mean per label");
  noise.sigma2.assign(k, prior.b0 / std::max(prior.a0 - 1.0, 1.0));

  std::vector<int> labels(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    int best = 0;
    for (int j = 1; j < k; ++j) {
      if (std::abs(image[i] - noise.mu[j]) < std::abs(image[i] - noise.mu[best])) best = j;
    }
    labels[i] = best + 1;
  }

  std::vector<int> aux(labels.size());
  std::vector<std::vector<double>> by_label(k);
  for (int iter = 1; iter <= config.iterations; ++iter) {
    sweep_labels(lattice, image, labels, k, chain.beta()[0], noise, label_rng);

    for (auto& bucket : by_label) bucket.clear();
    for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i] - 1].push_back(image[i]);
    for (int j = 0; j < k; ++j) {
      draw_noise_params(prior, j + 1, by_label[j], label_rng, noise.mu[j], noise.sigma2[j]);
    }

    const Vec stat = sufficient_stat(lattice, Family::Potts, labels);
    bool accepted = false;
    if (!hidden.fixed_beta) {
      if (surrogate) {
        accepted = chain.step(iter, [&](const ParamPoint& current, const ParamPoint& proposed) {
          return surrogate->log_normalizer_ratio(proposed, current) +
                 (proposed - current).dot(stat);
        });
      } else {
        accepted = chain.step(iter, [&](const ParamPoint& current, const ParamPoint& proposed) {
          std::copy(labels.begin(), labels.end(), aux.begin());
          sampler.run(aux, proposed, config.aux_sweeps, aux_rng);
          const Vec aux_stat = sufficient_stat(lattice, Family::Potts, aux);
          return (proposed - current).dot(stat - aux_stat);
        });
      }
    }
    ChainRecord& rec = chain.record(iter, stat, accepted);
    rec.mu = noise.mu;
    rec.sigma2 = noise.sigma2;
  }
  return chain.finish();
}

}  // namespace mrfgrid
