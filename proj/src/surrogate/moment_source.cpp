#include "mrfgrid/surrogate/moment_source.hpp"

namespace mrfgrid {

namespace {

// Keeps knot streams apart from the chain streams of the same seed.
constexpr std::uint64_t kKnotStreamTag = std::uint64_t{1} << 62;

}  // namespace

MonteCarloMoments::MonteCarloMoments(ModelSpec model, SamplerBudget budget, std::uint64_t seed)
    : model_(std::move(model)), budget_(budget), seed_(seed) {
  budget_.validate();
}

MomentEstimate MonteCarloMoments::at(const ParamPoint& beta, std::uint64_t stream) const {
  Rng rng(seed_, kKnotStreamTag | stream);
  return estimate_moments(model_, beta, budget_, rng);
}

ExactMoments::ExactMoments(const ModelSpec& model)
    : oracle_(std::make_shared<const ExactOracle>(model)) {}

ExactMoments::ExactMoments(std::shared_ptr<const ExactOracle> oracle) : oracle_(std::move(oracle)) {}

MomentEstimate ExactMoments::at(const ParamPoint& beta, std::uint64_t) const {
  const StatVector s = oracle_->expected_stat(beta);
  MomentEstimate est;
  est.beta = beta;
  est.mean = s.mean;
  est.cov = s.cov;
  est.std_error = Vec::Zero(beta.size());
  return est;
}

}  // namespace mrfgrid
