#include "mrfgrid/core/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mrfgrid/core/errors.hpp"

namespace mrfgrid {

std::uint64_t configuration_count(const ModelSpec& model, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int i = 0; i < model.pixels(); ++i) {
    if (total > cap / static_cast<std::uint64_t>(model.k())) {
      throw InfeasibleError("state space of " + std::to_string(model.k()) + "^" +
                            std::to_string(model.pixels()) +
                            " configurations exceeds the enumeration cap of " +
                            std::to_string(cap));
    }
    total *= static_cast<std::uint64_t>(model.k());
  }
  return total;
}

ExactOracle::ExactOracle(const ModelSpec& model, std::uint64_t cap) : model_(model) {
  configurations_ = configuration_count(model, cap);
  const Lattice lattice(model.height(), model.width());
  const int n = model.pixels();
  const int k = model.k();
  const int edges = static_cast<int>(lattice.edge_count());
  const bool autologistic = model.family() == Family::Autologistic;

  // Histogram over (label sum, matching edges). For Potts only the second
  // coordinate is used.
  const int sum_levels = autologistic ? n + 1 : 1;
  std::vector<std::uint64_t> histogram(static_cast<std::size_t>(sum_levels) * (edges + 1), 0);

  std::vector<int> state(n, 0);
  int matches = edges;
  int ups = 0;  // autologistic: number of +1 labels

  for (std::uint64_t c = 0; c < configurations_; ++c) {
    ++histogram[static_cast<std::size_t>(ups) * (edges + 1) + matches];
    for (int i = 0; i < n; ++i) {
      const int old_state = state[i];
      const int new_state = old_state + 1 == k ? 0 : old_state + 1;
      for (int j : lattice.neighbors(i)) {
        matches += (new_state == state[j]) - (old_state == state[j]);
      }
      if (autologistic) ups += new_state - old_state;
      state[i] = new_state;
      if (new_state != 0) break;
    }
  }

  for (int u = 0; u < sum_levels; ++u) {
    for (int m = 0; m <= edges; ++m) {
      const std::uint64_t count = histogram[static_cast<std::size_t>(u) * (edges + 1) + m];
      if (count == 0) continue;
      stats_.push_back(autologistic ? make_vec(2.0 * u - n, m) : make_vec(m));
      counts_.push_back(static_cast<double>(count));
      log_counts_.push_back(std::log(static_cast<double>(count)));
    }
  }
}

double ExactOracle::log_normalizer(const ParamPoint& beta) const {
  if (beta.size() != model_.dim()) throw UsageError("parameter dimension mismatch");
  double max_term = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < stats_.size(); ++s) {
    max_term = std::max(max_term, log_counts_[s] + beta.dot(stats_[s]));
  }
  double sum = 0.0;
  for (std::size_t s = 0; s < stats_.size(); ++s) {
    sum += std::exp(log_counts_[s] + beta.dot(stats_[s]) - max_term);
  }
  return max_term + std::log(sum);
}

double ExactOracle::normalizer(const ParamPoint& beta) const {
  if (beta.size() != model_.dim()) throw UsageError("parameter dimension mismatch");
  // Direct sum while it cannot overflow; exact for integer counts at beta = 0.
  double sum = 0.0;
  for (std::size_t s = 0; s < stats_.size(); ++s) {
    const double exponent = beta.dot(stats_[s]);
    if (exponent + log_counts_[s] > 700.0) return std::exp(log_normalizer(beta));
    sum += counts_[s] * std::exp(exponent);
  }
  return sum;
}

StatVector ExactOracle::expected_stat(const ParamPoint& beta) const {
  const double log_c = log_normalizer(beta);
  const int d = model_.dim();
  StatVector out;
  out.mean = Vec::Zero(d);
  for (std::size_t s = 0; s < stats_.size(); ++s) {
    out.mean += std::exp(log_counts_[s] + beta.dot(stats_[s]) - log_c) * stats_[s];
  }
  out.cov = Mat::Zero(d, d);
  for (std::size_t s = 0; s < stats_.size(); ++s) {
    const Vec centered = stats_[s] - out.mean;
    out.cov += std::exp(log_counts_[s] + beta.dot(stats_[s]) - log_c) * centered *
               centered.transpose();
  }
  out.value = out.mean;
  out.std_error = Vec::Zero(d);
  return out;
}

double ExactOracle::log_likelihood(const Vec& stat, const ParamPoint& beta) const {
  return beta.dot(stat) - log_normalizer(beta);
}

double exact_normalizer(const ModelSpec& model, const ParamPoint& beta) {
  return ExactOracle(model).normalizer(beta);
}

StatVector exact_expected_stat(const ModelSpec& model, const ParamPoint& beta) {
  return ExactOracle(model).expected_stat(beta);
}

LogPrior uniform_log_prior(const ModelSpec& model) {
  double log_volume = 0.0;
  for (const auto& b : model.bounds()) log_volume += std::log(b.width());
  return [model, log_volume](const ParamPoint& beta) {
    return model.contains(beta) ? -log_volume : -std::numeric_limits<double>::infinity();
  };
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw UsageError("linspace needs at least one point");
  std::vector<double> out(n, lo);
  if (n == 1) return out;
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

namespace {

std::vector<double> trapezoid_weights(const std::vector<double>& axis) {
  std::vector<double> w(axis.size(), 0.0);
  if (axis.size() == 1) {
    w[0] = 1.0;
    return w;
  }
  for (std::size_t i = 0; i + 1 < axis.size(); ++i) {
    const double h = axis[i + 1] - axis[i];
    if (!(h > 0)) throw UsageError("posterior grid axis must be strictly increasing");
    w[i] += 0.5 * h;
    w[i + 1] += 0.5 * h;
  }
  return w;
}

}  // namespace

DensityTable exact_posterior_density(const ExactOracle& oracle, const Vec& observed_stat,
                                     const LogPrior& log_prior,
                                     std::vector<std::vector<double>> axes) {
  const int d = oracle.model().dim();
  if (static_cast<int>(axes.size()) != d) throw UsageError("one grid axis per parameter needed");
  for (const auto& axis : axes) {
    if (axis.empty()) throw UsageError("empty posterior grid axis");
  }

  DensityTable table;
  std::vector<double> weights;
  if (d == 1) {
    for (double b : axes[0]) table.points.push_back(make_vec(b));
    weights = trapezoid_weights(axes[0]);
  } else {
    const auto w1 = trapezoid_weights(axes[0]);
    const auto w2 = trapezoid_weights(axes[1]);
    for (std::size_t i = 0; i < axes[0].size(); ++i) {
      for (std::size_t j = 0; j < axes[1].size(); ++j) {
        table.points.push_back(make_vec(axes[0][i], axes[1][j]));
        weights.push_back(w1[i] * w2[j]);
      }
    }
  }
  table.axes = std::move(axes);

  std::vector<double> log_post(table.points.size());
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    const double lp = log_prior(table.points[i]);
    log_post[i] = std::isfinite(lp) ? lp + oracle.log_likelihood(observed_stat, table.points[i])
                                    : -std::numeric_limits<double>::infinity();
    max_log = std::max(max_log, log_post[i]);
  }
  if (!std::isfinite(max_log)) throw UsageError("prior has no mass on the posterior grid");

  table.density.resize(table.points.size());
  double mass = 0.0;
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    table.density[i] = std::exp(log_post[i] - max_log);
    mass += weights[i] * table.density[i];
  }
  for (double& p : table.density) p /= mass;
  return table;
}

}  // namespace mrfgrid
