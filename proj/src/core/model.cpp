#include "mrfgrid/core/model.hpp"

#include <cmath>
#include <string>

#include "mrfgrid/core/errors.hpp"

namespace mrfgrid {

std::string_view to_string(Family family) {
  return family == Family::Potts ? "potts" : "autologistic";
}

Family parse_family(std::string_view text) {
  if (text == "potts") return Family::Potts;
  if (text == "autologistic") return Family::Autologistic;
  throw UsageError("unknown model family '" + std::string(text) + "'");
}

ModelSpec::ModelSpec(Family family, int k, int height, int width, std::vector<Interval> bounds)
    : family_(family), k_(k), height_(height), width_(width), bounds_(std::move(bounds)) {
  if (height < 1 || width < 1) throw UsageError("lattice dimensions must be positive");
  if (family == Family::Potts && k < 1) throw UsageError("Potts model needs k >= 1");
  if (family == Family::Autologistic && k != 2) {
    throw UsageError("autologistic model has exactly two labels");
  }
  if (static_cast<int>(bounds_.size()) != dim()) {
    throw UsageError("expected " + std::to_string(dim()) + " parameter bound(s), got " +
                     std::to_string(bounds_.size()));
  }
  for (const auto& b : bounds_) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi) {
      throw UsageError("parameter bounds must be finite with lo <= hi");
    }
  }
}

ModelSpec ModelSpec::potts(int k, int height, int width, Interval bounds) {
  return ModelSpec(Family::Potts, k, height, width, {bounds});
}

ModelSpec ModelSpec::autologistic(int height, int width, Interval field_bounds,
                                  Interval interaction_bounds) {
  return ModelSpec(Family::Autologistic, 2, height, width, {field_bounds, interaction_bounds});
}

std::size_t ModelSpec::edge_count() const {
  return static_cast<std::size_t>(height_) * (width_ - 1) +
         static_cast<std::size_t>(height_ - 1) * width_;
}

bool ModelSpec::contains(const ParamPoint& beta, double tol) const {
  if (beta.size() != dim()) return false;
  for (int j = 0; j < dim(); ++j) {
    const double slack = tol * std::max(1.0, bounds_[j].width());
    if (!(beta[j] >= bounds_[j].lo - slack && beta[j] <= bounds_[j].hi + slack)) return false;
  }
  return true;
}

ParamPoint ModelSpec::center() const {
  ParamPoint c(dim());
  for (int j = 0; j < dim(); ++j) c[j] = 0.5 * (bounds_[j].lo + bounds_[j].hi);
  return c;
}

bool ModelSpec::valid_label(int label) const {
  if (family_ == Family::Potts) return label >= 1 && label <= k_;
  return label == -1 || label == 1;
}

int ModelSpec::label_of(int state) const {
  return family_ == Family::Potts ? state + 1 : 2 * state - 1;
}

int ModelSpec::state_of(int label) const {
  return family_ == Family::Potts ? label - 1 : (label + 1) / 2;
}

LabelField::LabelField(const ModelSpec& model, std::vector<int> labels)
    : model_(std::make_shared<const ModelSpec>(model)), labels_(std::move(labels)) {
  if (static_cast<int>(labels_.size()) != model.pixels()) {
    throw MismatchError("label field has " + std::to_string(labels_.size()) +
                        " entries, model expects " + std::to_string(model.pixels()));
  }
  for (int label : labels_) {
    if (!model.valid_label(label)) {
      throw UsageError("label " + std::to_string(label) + " out of range for " +
                       std::string(to_string(model.family())) + " model");
    }
  }
}

LabelField LabelField::constant(const ModelSpec& model, int label) {
  return LabelField(model, std::vector<int>(model.pixels(), label));
}

Vec sufficient_stat(const Lattice& lattice, Family family, std::span<const int> labels) {
  double matches = 0.0;
  for (const auto& [i, j] : lattice.edges()) matches += labels[i] == labels[j] ? 1.0 : 0.0;
  if (family == Family::Potts) return make_vec(matches);
  double total = 0.0;
  for (int z : labels) total += z;
  return make_vec(total, matches);
}

StatVector sufficient_stat(const LabelField& z) {
  const auto& m = z.model();
  const Lattice lattice(m.height(), m.width());
  StatVector s;
  s.value = sufficient_stat(lattice, m.family(), z.labels());
  return s;
}

Vec sufficient_stat_by_neighbors(const Lattice& lattice, Family family,
                                 std::span<const int> labels) {
  long twice = 0;
  for (int i = 0; i < lattice.size(); ++i) {
    for (int j : lattice.neighbors(i)) twice += labels[i] == labels[j];
  }
  const double matches = static_cast<double>(twice) / 2.0;
  if (family == Family::Potts) return make_vec(matches);
  double total = 0.0;
  for (int z : labels) total += z;
  return make_vec(total, matches);
}

void check_stat_bounds(const ModelSpec& model, const Vec& stat) {
  const double edges = static_cast<double>(model.edge_count());
  const bool ok = model.family() == Family::Potts
                      ? stat.size() == 1 && stat[0] >= 0 && stat[0] <= edges
                      : stat.size() == 2 && std::abs(stat[0]) <= model.pixels() &&
                            stat[1] >= 0 && stat[1] <= edges;
  if (!ok) throw UsageError("sufficient statistic outside its attainable range");
}

}  // namespace mrfgrid
