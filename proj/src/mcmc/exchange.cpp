#include "chain_loop.hpp"
#include "mrfgrid/samplers/samplers.hpp"

namespace mrfgrid {

Chain run_aea(const ModelSpec& model, const LabelField& data, const RunConfig& config) {
  config.validate();
  if (data.model().family() != model.family() ||
      data.size() != static_cast<std::size_t>(model.pixels())) {
    throw MismatchError("data labels do not match the model");
  }
  detail::BetaChain chain(model, config);
  ForwardSampler sampler(model);
  Rng aux_rng(config.seed, streams::kAux);
  const Vec stat = sufficient_stat(sampler.lattice(), model.family(), data.labels());
  std::vector<int> aux(data.labels().size());

  auto log_term = [&](const ParamPoint& current, const ParamPoint& proposed) {
    std::copy(data.labels().begin(), data.labels().end(), aux.begin());
    sampler.run(aux, proposed, config.aux_sweeps, aux_rng);
    const Vec aux_stat = sufficient_stat(sampler.lattice(), model.family(), aux);
    return (proposed - current).dot(stat - aux_stat);
  };
  for (int iter = 1; iter <= config.iterations; ++iter) {
    const bool accepted = chain.step(iter, log_term);
    chain.record(iter, stat, accepted);
  }
  return chain.finish();
}

}  // namespace mrfgrid
