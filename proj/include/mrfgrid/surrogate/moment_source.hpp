#pragma once

#include <cstdint>
#include <memory>

#include "mrfgrid/core/enumeration.hpp"
#include "mrfgrid/samplers/samplers.hpp"

namespace mrfgrid {

/// Supplies E[S] and its Jacobian (the covariance of S) at a parameter point.
/// `stream` identifies the random stream so that results do not depend on
/// evaluation order.
class MomentSource {
 public:
  virtual ~MomentSource() = default;
  virtual const ModelSpec& model() const = 0;
  virtual MomentEstimate at(const ParamPoint& beta, std::uint64_t stream) const = 0;
  virtual bool exact() const = 0;
  virtual SamplerBudget budget() const = 0;
  virtual std::uint64_t seed() const = 0;
};

/// Forward simulation with Rng(seed, stream) per point.
class MonteCarloMoments final : public MomentSource {
 public:
  MonteCarloMoments(ModelSpec model, SamplerBudget budget, std::uint64_t seed);

  const ModelSpec& model() const override { return model_; }
  MomentEstimate at(const ParamPoint& beta, std::uint64_t stream) const override;
  bool exact() const override { return false; }
  SamplerBudget budget() const override { return budget_; }
  std::uint64_t seed() const override { return seed_; }

 private:
  ModelSpec model_;
  SamplerBudget budget_;
  std::uint64_t seed_;
};

/// Enumeration oracle; n_samples is reported as 0 and std_error as zero.
class ExactMoments final : public MomentSource {
 public:
  explicit ExactMoments(const ModelSpec& model);
  explicit ExactMoments(std::shared_ptr<const ExactOracle> oracle);

  const ModelSpec& model() const override { return oracle_->model(); }
  MomentEstimate at(const ParamPoint& beta, std::uint64_t stream) const override;
  bool exact() const override { return true; }
  SamplerBudget budget() const override { return {0, 0, 1}; }
  std::uint64_t seed() const override { return 0; }
  const ExactOracle& oracle() const { return *oracle_; }

 private:
  std::shared_ptr<const ExactOracle> oracle_;
};

}  // namespace mrfgrid
