#pragma once

#include <span>
#include <vector>

#include "mrfgrid/core/model.hpp"
#include "mrfgrid/core/rng.hpp"

namespace mrfgrid {

/// One raster-order sweep of single-site conditional updates, in place.
/// Potts: p(z_i = j | rest) proportional to exp(beta * #{neighbours labelled j}).
/// Autologistic: p(z_u = s | rest) proportional to
/// exp(beta_1 * s + beta_2 * #{neighbours labelled s}).
void gibbs_sweep(const Lattice& lattice, const ModelSpec& model, std::span<int> labels,
                 const ParamPoint& beta, Rng& rng);

LabelField gibbs_sweep(const LabelField& z, const ParamPoint& beta, Rng& rng);

/// Swendsen-Wang cluster update for the Potts model. Keeps its union-find
/// workspace between calls, so reuse one instance per chain.
class SwendsenWang {
 public:
  explicit SwendsenWang(const Lattice& lattice);

  /// Opens a bond between equal neighbours with probability 1 - exp(-beta),
  /// then gives every connected component a fresh uniform label in 1..k.
  void step(std::span<int> labels, int k, double beta, Rng& rng);

 private:
  int find(int i);

  const Lattice* lattice_;
  std::vector<int> parent_;
  std::vector<int> new_label_;
};

/// Throws MismatchError for the autologistic model (the field term does not
/// fit the bond construction) and UsageError for beta < 0.
LabelField swendsen_wang_step(const LabelField& z, const ParamPoint& beta, Rng& rng);

/// The forward sampler used for a model family: Swendsen-Wang for Potts,
/// single-site Gibbs sweeps for the autologistic model.
class ForwardSampler {
 public:
  explicit ForwardSampler(const ModelSpec& model);
  ForwardSampler(const ForwardSampler&) = delete;
  ForwardSampler& operator=(const ForwardSampler&) = delete;

  const ModelSpec& model() const { return model_; }
  const Lattice& lattice() const { return lattice_; }

  void step(std::span<int> labels, const ParamPoint& beta, Rng& rng);
  void run(std::span<int> labels, const ParamPoint& beta, int steps, Rng& rng);

 private:
  ModelSpec model_;
  Lattice lattice_;
  SwendsenWang sw_;
};

/// Independent uniform labels.
LabelField random_field(const ModelSpec& model, Rng& rng);

/// Field after `steps` forward-sampler steps from a uniform random start.
LabelField simulate_field(const ModelSpec& model, const ParamPoint& beta, int steps, Rng& rng);

struct SamplerBudget {
  int burn_in = 500;
  int n_samples = 1000;
  int thin = 1;

  void validate() const;
  /// Sampler steps spent per parameter point.
  long steps() const { return burn_in + static_cast<long>(n_samples) * thin; }
};

/// Monte Carlo moments of S(z) at a fixed beta. std_error treats the retained
/// draws as independent: sqrt(cov_ii / n_samples).
struct MomentEstimate {
  ParamPoint beta;
  Vec mean;
  Mat cov;
  int n_samples = 0;
  int burn_in = 0;
  Vec std_error;
};

MomentEstimate estimate_moments(const ModelSpec& model, const ParamPoint& beta,
                                const SamplerBudget& budget, Rng& rng);

/// Mean and (n - 1)-normalised covariance of a set of statistic draws.
MomentEstimate moments_of(const std::vector<Vec>& draws);

}  // namespace mrfgrid
