#include <array>
#include <cmath>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/samplers/samplers.hpp"

namespace mrfgrid {

namespace {

void potts_sweep(const Lattice& lattice, int k, std::span<int> labels, double beta, Rng& rng) {
  if (k == 1) return;
  std::array<double, 5> boltzmann{};
  for (int c = 0; c < 5; ++c) boltzmann[c] = std::exp(beta * c);
  std::vector<int> counts(k);
  std::vector<double> weights(k);
  for (int i = 0; i < lattice.size(); ++i) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int j : lattice.neighbors(i)) ++counts[labels[j] - 1];
    double total = 0.0;
    for (int s = 0; s < k; ++s) {
      weights[s] = boltzmann[counts[s]];
      total += weights[s];
    }
    double u = rng.uniform() * total;
    int s = 0;
    while (s + 1 < k && u >= weights[s]) u -= weights[s++];
    labels[i] = s + 1;
  }
}

void autologistic_sweep(const Lattice& lattice, std::span<int> labels, double field,
                        double interaction, Rng& rng) {
  for (int i = 0; i < lattice.size(); ++i) {
    int plus = 0;
    int minus = 0;
    for (int j : lattice.neighbors(i)) (labels[j] > 0 ? plus : minus)++;
    const double logit = 2.0 * field + interaction * (plus - minus);
    const double p_plus = 1.0 / (1.0 + std::exp(-logit));
    labels[i] = rng.uniform() < p_plus ? 1 : -1;
  }
}

}  // namespace

void gibbs_sweep(const Lattice& lattice, const ModelSpec& model, std::span<int> labels,
                 const ParamPoint& beta, Rng& rng) {
  if (beta.size() != model.dim()) throw UsageError("parameter dimension mismatch");
  if (model.family() == Family::Potts) {
    potts_sweep(lattice, model.k(), labels, beta[0], rng);
  } else {
    autologistic_sweep(lattice, labels, beta[0], beta[1], rng);
  }
}

LabelField gibbs_sweep(const LabelField& z, const ParamPoint& beta, Rng& rng) {
  const Lattice lattice(z.model().height(), z.model().width());
  LabelField out = z;
  gibbs_sweep(lattice, z.model(), out.mutable_labels(), beta, rng);
  return out;
}

LabelField random_field(const ModelSpec& model, Rng& rng) {
  std::vector<int> labels(model.pixels());
  for (int& z : labels) z = model.label_of(rng.uniform_index(model.k()));
  return LabelField(model, std::move(labels));
}

}  // namespace mrfgrid
