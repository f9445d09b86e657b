#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mrfgrid/core/lattice.hpp"
#include "mrfgrid/core/types.hpp"

namespace mrfgrid {

enum class Family { Potts, Autologistic };

std::string_view to_string(Family family);
Family parse_family(std::string_view text);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Model family, lattice size and parameter space P (a box, one interval per
/// parameter dimension).
class ModelSpec {
 public:
  ModelSpec(Family family, int k, int height, int width, std::vector<Interval> bounds);

  static ModelSpec potts(int k, int height, int width, Interval bounds);
  static ModelSpec autologistic(int height, int width, Interval field_bounds,
                                Interval interaction_bounds);

  Family family() const { return family_; }
  int k() const { return k_; }
  int height() const { return height_; }
  int width() const { return width_; }
  int pixels() const { return height_ * width_; }
  std::size_t edge_count() const;
  int dim() const { return family_ == Family::Potts ? 1 : 2; }
  const std::vector<Interval>& bounds() const { return bounds_; }

  bool contains(const ParamPoint& beta, double tol = 0.0) const;
  ParamPoint center() const;

  /// Valid label values: 1..k for Potts, -1/+1 for autologistic.
  bool valid_label(int label) const;
  /// Label value for a state index in [0, k).
  int label_of(int state) const;
  /// Inverse of label_of.
  int state_of(int label) const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

 private:
  Family family_;
  int k_;
  int height_;
  int width_;
  std::vector<Interval> bounds_;
};

/// Row-major labels on a lattice, validated against a model.
class LabelField {
 public:
  LabelField(const ModelSpec& model, std::vector<int> labels);

  /// Field of a single constant label.
  static LabelField constant(const ModelSpec& model, int label);

  const ModelSpec& model() const { return *model_; }
  const std::vector<int>& labels() const { return labels_; }
  std::vector<int>& mutable_labels() { return labels_; }
  int operator[](std::size_t i) const { return labels_[i]; }
  std::size_t size() const { return labels_.size(); }

  friend bool operator==(const LabelField& a, const LabelField& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::shared_ptr<const ModelSpec> model_;
  std::vector<int> labels_;
};

/// Sufficient statistic S(z) with optional moment estimates attached.
struct StatVector {
  Vec value;
  Vec mean;
  Mat cov;
  std::size_t n_samples = 0;
  Vec std_error;
};

/// S(z): Potts -> number of equal-labelled edges; autologistic -> (sum of
/// labels, number of equal-labelled edges).
Vec sufficient_stat(const Lattice& lattice, Family family, std::span<const int> labels);
StatVector sufficient_stat(const LabelField& z);

/// Same statistic via per-pixel neighbour sums (each edge counted twice).
Vec sufficient_stat_by_neighbors(const Lattice& lattice, Family family,
                                 std::span<const int> labels);

/// Throws UsageError unless 0 <= S <= |E| (Potts) or |S_1| <= n, 0 <= S_2 <= |E|.
void check_stat_bounds(const ModelSpec& model, const Vec& stat);

}  // namespace mrfgrid
