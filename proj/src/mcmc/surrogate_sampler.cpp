#include "chain_loop.hpp"

namespace mrfgrid {

void check_grid_matches(const ModelSpec& model, const SurrogateGrid& grid) {
  const ModelSpec& g = grid.model();
  if (g.family() != model.family() || g.k() != model.k() || g.height() != model.height() ||
      g.width() != model.width()) {
    throw MismatchError("grid was built for a different model or lattice size");
  }
  for (int j = 0; j < model.dim(); ++j) {
    if (model.bounds()[j].lo < g.bounds()[j].lo || model.bounds()[j].hi > g.bounds()[j].hi) {
      throw MismatchError("grid does not cover the parameter space of the model");
    }
  }
}

Chain run_surrogate(const ModelSpec& model, const LabelField& data, const SurrogateGrid& grid,
                    InterpolationScheme scheme, const RunConfig& config) {
  config.validate();
  check_grid_matches(model, grid);
  if (data.size() != static_cast<std::size_t>(model.pixels()) ||
      data.model().family() != model.family()) {
    throw MismatchError("data labels do not match the model");
  }
  const Interpolant surrogate(grid, scheme);
  const Vec stat = sufficient_stat(data).value;
  detail::BetaChain chain(model, config);

  auto log_term = [&](const ParamPoint& current, const ParamPoint& proposed) {
    return surrogate.log_normalizer_ratio(proposed, current) + (proposed - current).dot(stat);
  };
  for (int iter = 1; iter <= config.iterations; ++iter) {
    const bool accepted = chain.step(iter, log_term);
    chain.record(iter, stat, accepted);
  }
  return chain.finish();
}

}  // namespace mrfgrid
