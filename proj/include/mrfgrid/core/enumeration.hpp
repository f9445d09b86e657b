#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mrfgrid/core/model.hpp"

namespace mrfgrid {

/// Default limit on the number of configurations enumerated (k^n).
inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 24;

/// Exact reference computations for lattices small enough to enumerate.
///
/// Construction walks all k^n configurations once and records how many
/// configurations share each value of S(z) (the density of states). Every
/// quantity at a given beta is then a weighted sum over the distinct
/// statistic values, computed in log space.
class ExactOracle {
 public:
  explicit ExactOracle(const ModelSpec& model, std::uint64_t cap = kEnumerationCap);

  const ModelSpec& model() const { return model_; }
  std::uint64_t configurations() const { return configurations_; }

  /// Distinct statistic values and the number of configurations with each.
  const std::vector<Vec>& stats() const { return stats_; }
  const std::vector<double>& counts() const { return counts_; }

  double log_normalizer(const ParamPoint& beta) const;
  double normalizer(const ParamPoint& beta) const;
  /// Mean and covariance of S(z) under p(z | beta).
  StatVector expected_stat(const ParamPoint& beta) const;
  /// log p(z | beta) for a configuration with statistic `stat`.
  double log_likelihood(const Vec& stat, const ParamPoint& beta) const;

 private:
  ModelSpec model_;
  std::uint64_t configurations_ = 0;
  std::vector<Vec> stats_;
  std::vector<double> counts_;
  std::vector<double> log_counts_;
};

/// k^n, or throws InfeasibleError when it exceeds `cap`.
std::uint64_t configuration_count(const ModelSpec& model, std::uint64_t cap = kEnumerationCap);

double exact_normalizer(const ModelSpec& model, const ParamPoint& beta);
StatVector exact_expected_stat(const ModelSpec& model, const ParamPoint& beta);

/// Posterior density of beta evaluated on a tensor grid, normalised with the
/// trapezoid rule. For D = 1 `axes` holds one sorted coordinate list; for
/// D = 2 two lists and the table is ordered with beta_2 varying fastest.
struct DensityTable {
  std::vector<std::vector<double>> axes;
  std::vector<ParamPoint> points;
  std::vector<double> density;
};

using LogPrior = std::function<double(const ParamPoint&)>;

/// Log density of the uniform distribution on P (or -inf outside P).
LogPrior uniform_log_prior(const ModelSpec& model);

DensityTable exact_posterior_density(const ExactOracle& oracle, const Vec& observed_stat,
                                     const LogPrior& log_prior,
                                     std::vector<std::vector<double>> axes);

/// n equally spaced points on [lo, hi] (both included).
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace mrfgrid
