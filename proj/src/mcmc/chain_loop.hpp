#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/mcmc/mcmc.hpp"

namespace mrfgrid::detail {

/// Metropolis-Hastings state for beta shared by all samplers.
class BetaChain {
 public:
  BetaChain(const ModelSpec& model, const RunConfig& config)
      : model_(model),
        config_(config),
        rng_(config.seed, streams::kChain),
        proposal_(model, config.proposal, config.burn_in),
        beta_(config.beta_init.value_or(model.center())) {
    if (!model.contains(beta_)) throw DomainError("initial beta lies outside the parameter space");
    chain_.burn_in = config.burn_in;
    chain_.records.reserve(config.iterations);
  }

  const ParamPoint& beta() const { return beta_; }

  /// One move; `log_term(current, proposed)` is log rho without the proposal
  /// correction.
  template <typename LogTerm>
  bool step(int iter, LogTerm&& log_term) {
    const ParamPoint proposed = proposal_.propose(beta_, rng_);
    bool accepted = false;
    double prob = 0.0;
    if (model_.contains(proposed)) {
      const double log_rho =
          std::min(0.0, log_term(beta_, proposed) + proposal_.log_correction(beta_, proposed));
      prob = std::exp(log_rho);
      accepted = std::log(rng_.uniform()) < log_rho;
    }
    if (accepted) beta_ = proposed;
    proposal_.adapt(iter, prob, beta_);
    if (iter > config_.burn_in && accepted) ++accepted_after_burn_in_;
    return accepted;
  }

  ChainRecord& record(int iter, const Vec& stat, bool accepted) {
    ChainRecord rec;
    rec.iter = iter;
    rec.beta = beta_;
    rec.stat = stat;
    rec.accepted = accepted;
    chain_.records.push_back(std::move(rec));
    return chain_.records.back();
  }

  Chain finish() {
    const int kept = config_.iterations - config_.burn_in;
    chain_.acceptance_rate = static_cast<double>(accepted_after_burn_in_) / kept;
    chain_.final_proposal_sd = proposal_.sd();
    return std::move(chain_);
  }

 private:
  const ModelSpec& model_;
  const RunConfig& config_;
  Rng rng_;
  RandomWalkProposal proposal_;
  ParamPoint beta_;
  Chain chain_;
  long accepted_after_burn_in_ = 0;
};

}  // namespace mrfgrid::detail
