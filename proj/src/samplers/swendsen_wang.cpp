#include <cmath>
#include <numeric>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/samplers/samplers.hpp"

namespace mrfgrid {

SwendsenWang::SwendsenWang(const Lattice& lattice)
    : lattice_(&lattice), parent_(lattice.size()), new_label_(lattice.size()) {}

int SwendsenWang::find(int i) {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];
    i = parent_[i];
  }
  return i;
}

void SwendsenWang::step(std::span<int> labels, int k, double beta, Rng& rng) {
  if (beta < 0.0) throw UsageError("Swendsen-Wang needs beta >= 0");
  std::iota(parent_.begin(), parent_.end(), 0);
  const double p_bond = -std::expm1(-beta);
  if (p_bond > 0.0) {
    for (const auto& [i, j] : lattice_->edges()) {
      if (labels[i] != labels[j] || !(rng.uniform() < p_bond)) continue;
      const int ri = find(i);
      const int rj = find(j);
      if (ri != rj) parent_[std::max(ri, rj)] = std::min(ri, rj);
    }
  }
  // Roots are the smallest index of their cluster, so a raster scan meets
  // every root before any other member: labels are drawn in a fixed order.
  for (int i = 0; i < lattice_->size(); ++i) {
    const int r = find(i);
    if (r == i) new_label_[i] = 1 + rng.uniform_index(k);
    labels[i] = new_label_[r];
  }
}

LabelField swendsen_wang_step(const LabelField& z, const ParamPoint& beta, Rng& rng) {
  if (z.model().family() != Family::Potts) {
    throw MismatchError("Swendsen-Wang is implemented for the Potts model only");
  }
  const Lattice lattice(z.model().height(), z.model().width());
  SwendsenWang sw(lattice);
  LabelField out = z;
  sw.step(out.mutable_labels(), z.model().k(), beta[0], rng);
  return out;
}

}  // namespace mrfgrid
