#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "mrfgrid/core/model.hpp"
#include "mrfgrid/core/rng.hpp"
#include "mrfgrid/surrogate/grid.hpp"
#include "mrfgrid/surrogate/interpolation.hpp"

namespace mrfgrid {

/// Named random streams derived from a run seed.
namespace streams {
inline constexpr std::uint64_t kChain = 1;
inline constexpr std::uint64_t kAux = 2;
inline constexpr std::uint64_t kLabels = 3;
inline constexpr std::uint64_t kGrid = 4;
inline constexpr std::uint64_t kTestPoints = 5;
inline constexpr std::uint64_t kSimulate = 6;
}  // namespace streams

/// Gaussian random walk on beta. Standard deviations are per dimension; when
/// `adapt` is set they are tuned during burn-in only and frozen afterwards.
struct ProposalSpec {
  /// Initial standard deviations; empty means 5% of the width of P.
  Vec sd;
  bool adapt = true;
  /// 0 selects 0.44 for D = 1 and 0.234 for D = 2.
  double target_rate = 0.0;
  int window = 100;
};

struct RunConfig {
  int iterations = 10000;
  int burn_in = 1000;
  std::uint64_t seed = 1;
  /// Auxiliary sampler steps per exchange move.
  int aux_sweeps = 100;
  /// Defaults to the centre of P.
  std::optional<ParamPoint> beta_init;
  ProposalSpec proposal;

  void validate() const;
};

struct ChainRecord {
  int iter = 0;
  ParamPoint beta;
  Vec stat;
  bool accepted = false;
  std::vector<double> mu;
  std::vector<double> sigma2;
};

struct Chain {
  std::vector<ChainRecord> records;
  int burn_in = 0;
  /// Over post-burn-in iterations.
  double acceptance_rate = 0.0;
  Vec final_proposal_sd;

  /// Beta draws after burn-in.
  std::vector<ParamPoint> retained_betas() const;
};

class RandomWalkProposal {
 public:
  RandomWalkProposal(const ModelSpec& model, const ProposalSpec& spec, int burn_in);

  ParamPoint propose(const ParamPoint& current, Rng& rng) const;
  /// log q(current | proposed) - log q(proposed | current); zero for the
  /// symmetric walk.
  double log_correction(const ParamPoint& current, const ParamPoint& proposed) const;
  /// Robbins-Monro update of the log scale towards the target rate, plus a
  /// reset of the per-dimension spread to the chain's spread at the end of
  /// each window. No-op after burn-in.
  void adapt(int iteration, double accept_prob, const ParamPoint& current);
  Vec sd() const;
  double target_rate() const { return target_; }

 private:
  int dim_;
  int burn_in_;
  bool adapt_;
  double target_;
  int window_;
  Vec base_sd_;
  double log_scale_ = 0.0;
  std::vector<ParamPoint> window_draws_;
};

/// Approximate exchange algorithm on fully observed labels. The auxiliary
/// field is simulated at the proposal for `aux_sweeps` steps starting from
/// the data, and log rho = (beta' - beta)'(S(z) - S(w)) + log q-ratio.
Chain run_aea(const ModelSpec& model, const LabelField& data, const RunConfig& config);

/// Path-sampling sampler: log rho = log C(beta)/C(beta') + (beta' - beta)'S(z)
/// with the normalising-constant ratio taken from the surrogate. No forward
/// simulation inside the loop. Proposals outside P are rejected.
Chain run_surrogate(const ModelSpec& model, const LabelField& data, const SurrogateGrid& grid,
                    InterpolationScheme scheme, const RunConfig& config);

/// Throws MismatchError unless the grid was built for this model and covers
/// its parameter space.
void check_grid_matches(const ModelSpec& model, const SurrogateGrid& grid);

/// Normal-inverse-gamma prior per label: mu_j | s2 ~ N(mu0_j, s2 / lambda0),
/// s2 ~ InvGamma(a0, b0).
struct NoisePrior {
  std::vector<double> mu0;
  double lambda0 = 0.01;
  double a0 = 2.0;
  double b0 = 1.0;
};

/// mu0 at the (j - 1/2)/k quantiles of y, lambda0 = 0.01, a0 = 2 and b0 such
/// that the prior mean of sigma^2 is (range(y) / (2k))^2.
NoisePrior default_noise_prior(std::span<const double> image, int k);

/// Conjugate posterior draw of (mu, sigma^2) for one label class.
void draw_noise_params(const NoisePrior& prior, int label, std::span<const double> values,
                       Rng& rng, double& mu, double& sigma2);

enum class BetaUpdate { Exchange, Surrogate };

struct HiddenPottsConfig {
  BetaUpdate update = BetaUpdate::Exchange;
  const SurrogateGrid* grid = nullptr;
  InterpolationScheme scheme = InterpolationScheme::Hermite;
  std::optional<NoisePrior> prior;
  /// Initial means; default prior.mu0.
  std::optional<std::vector<double>> mu_init;
  /// Hold beta at this value instead of sampling it.
  std::optional<ParamPoint> fixed_beta;
};

/// Hidden Potts model with Gaussian pixel noise. Each iteration runs a
/// checkerboard label sweep, conjugate (mu_j, sigma_j^2) draws and one beta
/// move (exchange or surrogate).
Chain run_hidden_potts(std::span<const double> image, const ModelSpec& model,
                       const HiddenPottsConfig& hidden, const RunConfig& config);

/// log(1 + sqrt(k)) for Potts; (0, log(1 + sqrt(2))) for the autologistic
/// model. Clamped into P.
ParamPoint analytic_beta_crit(const ModelSpec& model);

struct StochasticApproximationOptions {
  int iterations = 300;
  double gain = 1.0;
  /// Sampler steps discarded and averaged per iteration (chain is warm-started).
  int steps_discarded = 5;
  int steps_averaged = 20;
  double tolerance = 1e-8;
};

/// Robbins-Monro search for the beta whose expected statistic matches
/// `target`: beta_{m+1} = beta_m + (gain / m) * Cov^-1 (target - S_hat(beta_m)),
/// the covariance preconditioning being the affine normalisation of the
/// statistic. Cov is smoothed over earlier iterations. Returns the average of
/// the second half of the iterates, clamped to P.
ParamPoint find_beta_crit(const ModelSpec& model, const Vec& target,
                          const StochasticApproximationOptions& options, Rng& rng);

/// Chain CSV: `iter,beta_1[,beta_2],stat_1[,stat_2],accepted[,mu_1..mu_k,sigma2_1..sigma2_k]`.
void write_chain_csv(std::ostream& out, const Chain& chain, bool include_burn_in = false);
void write_chain_csv(const std::filesystem::path& path, const Chain& chain,
                     bool include_burn_in = false);
/// Reads a chain CSV back; burn_in is set to 0.
Chain read_chain_csv(std::istream& in);
Chain read_chain_csv(const std::filesystem::path& path);

}  // namespace mrfgrid
