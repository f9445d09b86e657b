#include <cmath>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/mcmc/mcmc.hpp"

namespace mrfgrid {

void RunConfig::validate() const {
  if (iterations < 1) throw UsageError("number of iterations must be positive");
  if (burn_in < 0 || burn_in >= iterations) {
    throw UsageError("burn-in must satisfy 0 <= burn-in < iterations");
  }
  if (aux_sweeps < 1) throw UsageError("auxiliary sweeps must be positive");
  if (proposal.window < 2) throw UsageError("adaptation window must be at least 2");
}

std::vector<ParamPoint> Chain::retained_betas() const {
  std::vector<ParamPoint> out;
  for (const auto& rec : records) {
    if (rec.iter > burn_in) out.push_back(rec.beta);
  }
  return out;
}

RandomWalkProposal::RandomWalkProposal(const ModelSpec& model, const ProposalSpec& spec,
                                       int burn_in)
    : dim_(model.dim()),
      burn_in_(burn_in),
      adapt_(spec.adapt),
      target_(spec.target_rate > 0 ? spec.target_rate : (model.dim() == 1 ? 0.44 : 0.234)),
      window_(spec.window) {
  if (spec.sd.size() == 0) {
    base_sd_ = Vec(dim_);
    for (int j = 0; j < dim_; ++j) base_sd_[j] = 0.05 * model.bounds()[j].width();
  } else {
    if (spec.sd.size() != dim_) throw UsageError("proposal needs one standard deviation per dimension");
    base_sd_ = spec.sd;
  }
  for (int j = 0; j < dim_; ++j) {
    if (!(base_sd_[j] > 0.0) || !std::isfinite(base_sd_[j])) {
      throw UsageError("proposal standard deviations must be positive");
    }
  }
  if (!(target_ > 0.0 && target_ < 1.0)) throw UsageError("target acceptance rate must be in (0, 1)");
}

Vec RandomWalkProposal::sd() const { return std::exp(log_scale_) * base_sd_; }

ParamPoint RandomWalkProposal::propose(const ParamPoint& current, Rng& rng) const {
  const Vec s = sd();
  ParamPoint out = current;
  for (int j = 0; j < dim_; ++j) out[j] += s[j] * rng.normal();
  return out;
}

double RandomWalkProposal::log_correction(const ParamPoint&, const ParamPoint&) const {
  return 0.0;
}

void RandomWalkProposal::adapt(int iteration, double accept_prob, const ParamPoint& current) {
  if (!adapt_ || iteration > burn_in_) return;
  log_scale_ += (accept_prob - target_) / std::pow(static_cast<double>(iteration), 0.6);
  window_draws_.push_back(current);
  if (static_cast<int>(window_draws_.size()) < window_) return;

  Vec mean = Vec::Zero(dim_);
  for (const auto& b : window_draws_) mean += b;
  mean /= static_cast<double>(window_draws_.size());
  Vec var = Vec::Zero(dim_);
  for (const auto& b : window_draws_) var += (b - mean).cwiseAbs2();
  var /= static_cast<double>(window_draws_.size() - 1);
  window_draws_.clear();
  if ((var.array() > 0.0).all()) {
    base_sd_ = var.cwiseSqrt() * (2.38 / std::sqrt(static_cast<double>(dim_)));
    log_scale_ = 0.0;
  }
}

}  // namespace mrfgrid
