#include <doctest.h>

#include <cmath>

#include "mrfgrid/core/enumeration.hpp"
#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/samplers/samplers.hpp"
#include "support/brute_force.hpp"

using namespace mrfgrid;
using mrfgrid::testing::BruteModel;

namespace {

std::uint64_t encode(const ModelSpec& m, const std::vector<int>& z) {
  std::uint64_t code = 0;
  for (auto it = z.rbegin(); it != z.rend(); ++it) {
    code = code * static_cast<std::uint64_t>(m.k()) + static_cast<std::uint64_t>(m.state_of(*it));
  }
  return code;
}

template <typename Step>
double tv_distance(const ModelSpec& m, const BruteModel& bm, const std::vector<double>& beta,
                   int steps, Step&& step) {
  const auto weights = mrfgrid::testing::weights(bm, beta);
  double c = 0.0;
  for (double v : weights) c += v;
  std::vector<double> freq(weights.size(), 0.0);
  std::vector<int> z(static_cast<std::size_t>(m.pixels()), m.label_of(0));
  for (int i = 0; i < 100; ++i) step(z);
  for (int i = 0; i < steps; ++i) {
    step(z);
    freq[encode(m, z)] += 1.0;
  }
  double tv = 0.0;
  for (std::size_t s = 0; s < freq.size(); ++s) tv += std::abs(freq[s] / steps - weights[s] / c);
  return 0.5 * tv;
}

}  // namespace

TEST_CASE("Swendsen-Wang and Gibbs target the Potts distribution") {
  const auto m = ModelSpec::potts(2, 2, 3, {0, 2.5});
  const BruteModel bm{true, 2, 2, 3};
  const Lattice lat(2, 3);
  Rng rng(3, 1);
  SwendsenWang sw(lat);
  CHECK(tv_distance(m, bm, {0.5}, 50000, [&](std::vector<int>& z) { sw.step(z, 2, 0.5, rng); }) <
        0.03);
  CHECK(tv_distance(m, bm, {0.5}, 50000, [&](std::vector<int>& z) {
          gibbs_sweep(lat, m, z, make_vec(0.5), rng);
        }) < 0.03);
}

TEST_CASE("three-label Swendsen-Wang on a 2x2 lattice") {
  const auto m = ModelSpec::potts(3, 2, 2, {0, 2.5});
  const BruteModel bm{true, 3, 2, 2};
  const Lattice lat(2, 2);
  Rng rng(4, 1);
  SwendsenWang sw(lat);
  CHECK(tv_distance(m, bm, {1.1}, 50000, [&](std::vector<int>& z) { sw.step(z, 3, 1.1, rng); }) <
        0.03);
}

TEST_CASE("Gibbs targets the autologistic distribution") {
  const auto m = ModelSpec::autologistic(2, 2, {-1, 1}, {0, 1});
  const BruteModel bm{false, 2, 2, 2};
  const Lattice lat(2, 2);
  Rng rng(9, 2);
  CHECK(tv_distance(m, bm, {0.2, 0.4}, 50000, [&](std::vector<int>& z) {
          gibbs_sweep(lat, m, z, make_vec(0.2, 0.4), rng);
        }) < 0.03);
}

TEST_CASE("sampler edge cases") {
  const auto one = ModelSpec::potts(1, 3, 3, {0, 2});
  Rng rng(1, 1);
  auto z = LabelField::constant(one, 1);
  CHECK(gibbs_sweep(z, make_vec(1.0), rng) == z);
  CHECK(swendsen_wang_step(z, make_vec(1.0), rng) == z);

  const auto potts = ModelSpec::potts(2, 3, 3, {0, 2});
  CHECK_THROWS_AS(swendsen_wang_step(LabelField::constant(potts, 1), make_vec(-0.1), rng),
                  UsageError);
  const auto auto_model = ModelSpec::autologistic(3, 3, {-1, 1}, {0, 1});
  CHECK_THROWS_AS(swendsen_wang_step(LabelField::constant(auto_model, 1), make_vec(0.0, 0.5), rng),
                  MismatchError);
  CHECK_THROWS_AS(gibbs_sweep(LabelField::constant(potts, 1), make_vec(0.0, 0.5), rng), UsageError);
}

TEST_CASE("large beta keeps Swendsen-Wang fields ordered") {
  const auto m = ModelSpec::potts(4, 20, 20, {0, 5});
  Rng rng(2, 2);
  const LabelField z = simulate_field(m, make_vec(4.0), 50, rng);
  CHECK(sufficient_stat(z).value[0] > 0.95 * static_cast<double>(m.edge_count()));
}

TEST_CASE("beta = 0 gives uniform labels") {
  const auto m = ModelSpec::potts(5, 40, 40, {0, 2});
  Rng rng(7, 1);
  std::vector<double> freq(5, 0.0);
  for (int rep = 0; rep < 10; ++rep) {
    const LabelField z = simulate_field(m, make_vec(0.0), 3, rng);
    for (int v : z.labels()) freq[static_cast<std::size_t>(v - 1)] += 1.0;
  }
  const double n = 16000.0;
  for (double f : freq) CHECK(std::abs(f - n / 5) < 4.0 * std::sqrt(n * 0.2 * 0.8));
}

TEST_CASE("simulation is reproducible per stream") {
  const auto m = ModelSpec::potts(3, 10, 10, {0, 2});
  Rng a(5, 6), b(5, 6), c(5, 7);
  const auto za = simulate_field(m, make_vec(1.0), 20, a);
  CHECK(za == simulate_field(m, make_vec(1.0), 20, b));
  CHECK_FALSE(za == simulate_field(m, make_vec(1.0), 20, c));
}

TEST_CASE("moment estimates agree with the oracle") {
  const auto m = ModelSpec::potts(2, 3, 3, {0, 2.5});
  const ExactOracle oracle(m);
  Rng rng(12, 1);
  for (double b : {0.3, 0.9, 1.6}) {
    const MomentEstimate est = estimate_moments(m, make_vec(b), SamplerBudget{200, 20000, 1}, rng);
    const StatVector exact = oracle.expected_stat(make_vec(b));
    CHECK(est.n_samples == 20000);
    CHECK(std::abs(est.mean[0] - exact.mean[0]) < 5.0 * est.std_error[0]);
    CHECK(est.cov(0, 0) == doctest::Approx(exact.cov(0, 0)).epsilon(0.08));
    CHECK(est.std_error[0] == doctest::Approx(std::sqrt(est.cov(0, 0) / 20000)));
  }
}

TEST_CASE("moments of explicit draws") {
  const MomentEstimate est = moments_of({make_vec(1.0, 2.0), make_vec(3.0, 2.0), make_vec(5.0, 8.0)});
  CHECK(est.mean[0] == 3.0);
  CHECK(est.mean[1] == 4.0);
  CHECK(est.cov(0, 0) == 4.0);
  CHECK(est.cov(1, 1) == 12.0);
  CHECK(est.cov(0, 1) == 6.0);
  CHECK_THROWS_AS(moments_of({make_vec(1.0)}), UsageError);
  CHECK_THROWS_AS((SamplerBudget{-1, 10, 1}.validate()), UsageError);
  CHECK_THROWS_AS((SamplerBudget{0, 10, 0}.validate()), UsageError);
  CHECK(SamplerBudget{}.steps() == 1500);
}
