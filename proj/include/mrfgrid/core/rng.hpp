#pragma once

#include <cstdint>
#include <random>

namespace mrfgrid {

/// Seeded random stream. The engine is std::mt19937_64 initialised through
/// std::seed_seq from (seed, stream); both are fully specified by the
/// standard. The variate transforms below are written out here rather than
/// taken from <random> distributions, whose algorithms are left to the
/// library implementation, so draws are reproducible across toolchains.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n).
  int uniform_index(int n);
  bool bernoulli(double p) { return uniform() < p; }
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }
  /// Gamma(shape, scale = 1).
  double gamma(double shape);
  /// Inverse-gamma with the given shape and scale.
  double inverse_gamma(double shape, double scale) { return scale / gamma(shape); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace mrfgrid
