// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrfgrid/cli/cli.hpp"
#include "mrfgrid/core/enumeration.hpp"
#include "mrfgrid/diagnostics/diagnostics.hpp"
#include "mrfgrid/mcmc/mcmc.hpp"
#include "mrfgrid/samplers/samplers.hpp"
#include "mrfgrid/surrogate/grid_builder.hpp"
#include "mrfgrid/surrogate/interpolation.hpp"
#include "support/brute_force.hpp"

using namespace mrfgrid;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Detail {
 public:
  template <typename T>
  Detail& operator()(const std::string& key, const T& value) {
    if (!text_.empty()) text_ += ", ";
    std::ostringstream s;
    s.precision(4);
    s << key << '=' << value;
    text_ += s.str();
    return *this;
  }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "mrfgrid_acceptance";
  fs::create_directories(dir);
  return (dir / name).string();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mrfgrid");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

std::string format_point_pair(const Vec& v) {
  std::ostringstream s;
  s.precision(4);
  s << '(' << v[0] << ' ' << v[1] << ')';
  return s.str();
}

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

// 1. Oracle exactness on the 3x3 two-label lattice.
Outcome oracle_exactness() {
  const auto start = std::chrono::steady_clock::now();
  const auto m = ModelSpec::potts(2, 3, 3, {0.0, 2.5});
  const double c = exact_normalizer(m, make_vec(0.0));
  const double mean = exact_expected_stat(m, make_vec(0.0)).mean[0];
  const double brute = mrfgrid::testing::normalizer({true, 2, 3, 3}, std::vector<double>{0.0});
  const double t = seconds_since(start);
  Detail d;
  d("C(0)", c)("E[S](0)", mean)("brute C(0)", brute)("seconds", t);
  return {c == 512.0 && mean == 6.0 && brute == 512.0 && t < 1.0, d.str()};
}

// 2. Sampler stationarity: total variation over all 64 states of a 2x3 lattice.
Outcome sampler_stationarity() {
  const auto start = std::chrono::steady_clock::now();
  const auto m = ModelSpec::potts(2, 2, 3, {0.0, 2.5});
  const mrfgrid::testing::BruteModel bm{true, 2, 2, 3};
  const auto weights = mrfgrid::testing::weights(bm, std::vector<double>{0.5});
  double total = 0.0;
  for (double w : weights) total += w;
  const Lattice lattice(2, 3);
  const int steps = 200000;

  auto tv_of = [&](const std::function<void(std::vector<int>&)>& step) {
    std::vector<double> freq(weights.size(), 0.0);
    std::vector<int> z(6, 1);
    for (int i = 0; i < 100; ++i) step(z);
    for (int i = 0; i < steps; ++i) {
      step(z);
      std::uint64_t code = 0;
      for (auto it = z.rbegin(); it != z.rend(); ++it) code = code * 2 + static_cast<std::uint64_t>(*it - 1);
      freq[code] += 1.0;
    }
    double tv = 0.0;
    for (std::size_t s = 0; s < freq.size(); ++s) tv += std::abs(freq[s] / steps - weights[s] / total);
    return 0.5 * tv;
  };
  Rng rng_sw(2024, 1);
  Rng rng_gibbs(2024, 2);
  SwendsenWang sw(lattice);
  const double tv_sw = tv_of([&](std::vector<int>& z) { sw.step(z, 2, 0.5, rng_sw); });
  const double tv_gibbs =
      tv_of([&](std::vector<int>& z) { gibbs_sweep(lattice, m, z, make_vec(0.5), rng_gibbs); });
  const double t = seconds_since(start);
  Detail d;
  d("TV Swendsen-Wang", tv_sw)("TV Gibbs", tv_gibbs)("seconds", t);
  return {tv_sw < 0.02 && tv_gibbs < 0.02 && t < 30.0, d.str()};
}

// 3. Cov(S) equals the derivative of E[S].
Outcome gradient_identity() {
  const auto start = std::chrono::steady_clock::now();
  const ExactOracle oracle(ModelSpec::potts(2, 3, 3, {0.0, 2.5}));
  const double h = 1e-4;
  double worst = 0.0;
  for (double b : {0.2, 0.8, 1.4}) {
    const double cov = oracle.expected_stat(make_vec(b)).cov(0, 0);
    const double fd = (oracle.expected_stat(make_vec(b + h)).mean[0] -
                       oracle.expected_stat(make_vec(b - h)).mean[0]) / (2 * h);
    worst = std::max(worst, std::abs(cov - fd) / cov);
  }
  const double t = seconds_since(start);
  Detail d;
  d("max relative error", worst)("seconds", t);
  return {worst < 1e-4 && t < 5.0, d.str()};
}

// 4. Interpolation ordering with exact knots on the 3x3 six-label lattice.
Outcome interpolation_ordering() {
  const auto start = std::chrono::steady_clock::now();
  const auto m = ModelSpec::potts(6, 3, 3, {0.0, 2.5});
  const ExactMoments exact(m);
  const auto equi = build_equidistant_grid(m, {10}, exact);
  const auto grad = tune_kappa(m, analytic_beta_crit(m), 10, exact).grid;
  const auto points = uniform_points(m, 1000, 1);
  auto rmse = [&](const SurrogateGrid& g, InterpolationScheme s) {
    return interpolation_rmse(g, s, exact, points).rmse[0];
  };
  const double el = rmse(equi, InterpolationScheme::PiecewiseLinear);
  const double eh = rmse(equi, InterpolationScheme::Hermite);
  const double gl = rmse(grad, InterpolationScheme::PiecewiseLinear);
  const double gh = rmse(grad, InterpolationScheme::Hermite);
  const double t = seconds_since(start);
  Detail d;
  d("knots equi/grad", std::to_string(equi.size()) + "/" + std::to_string(grad.size()))(
      "equi linear", el)("equi hermite", eh)("grad linear", gl)("grad hermite", gh)("seconds", t);
  const bool pass = equi.size() == 10 && grad.size() == 10 && eh <= el && gh <= gl && gh < eh &&
                    t < 60.0;
  return {pass, d.str()};
}

// 5. Path integral against exact log normalising-constant ratios.
Outcome path_integral() {
  const auto start = std::chrono::steady_clock::now();
  const auto m = ModelSpec::potts(2, 3, 3, {0.0, 2.5});
  const auto oracle = std::make_shared<const ExactOracle>(m);
  const auto grid = build_equidistant_grid(m, {50}, ExactMoments(oracle));
  const double truth = oracle->log_normalizer(make_vec(1.5)) - oracle->log_normalizer(make_vec(0.2));
  const double eh = std::abs(
      log_normalizer_ratio(grid, InterpolationScheme::Hermite, make_vec(0.2), make_vec(1.5)) - truth);
  const double el = std::abs(log_normalizer_ratio(grid, InterpolationScheme::PiecewiseLinear,
                                                  make_vec(0.2), make_vec(1.5)) - truth);
  const double t = seconds_since(start);
  Detail d;
  d("exact", truth)("hermite error", eh)("linear error", el)("seconds", t);
  return {eh < 1e-3 && el < 1e-2 && t < 10.0, d.str()};
}

// 6. Exact-posterior recovery by both samplers.
Outcome posterior_recovery() {
  const auto m = ModelSpec::potts(2, 3, 3, {0.0, 2.5});
  Rng data_rng(6, streams::kSimulate);
  const LabelField z = simulate_field(m, make_vec(0.6), 100, data_rng);
  const auto oracle = std::make_shared<const ExactOracle>(m);
  const auto table = exact_posterior_density(*oracle, sufficient_stat(z).value,
                                             uniform_log_prior(m), {linspace(0.0, 2.5, 2501)});
  RunConfig config;
  config.iterations = 100000;
  config.burn_in = 5000;
  config.aux_sweeps = 100;
  config.seed = 6;

  auto start = std::chrono::steady_clock::now();
  const Chain aea = run_aea(m, z, config);
  const double t_aea = seconds_since(start);
  start = std::chrono::steady_clock::now();
  const auto grid = build_equidistant_grid(m, {50}, ExactMoments(oracle));
  const Chain sur = run_surrogate(m, z, grid, InterpolationScheme::Hermite, config);
  const double t_sur = seconds_since(start);

  const double kl_aea = kl_to_density(table, aea.retained_betas(), 50).value;
  const double kl_sur = kl_to_density(table, sur.retained_betas(), 50).value;
  Detail d;
  d("S(z)", sufficient_stat(z).value[0])("KL aea", kl_aea)("KL surrogate", kl_sur)(
      "acceptance aea", aea.acceptance_rate)("acceptance surrogate", sur.acceptance_rate)(
      "seconds aea", t_aea)("seconds surrogate", t_sur);
  return {kl_aea < 0.05 && kl_sur < 0.05 && t_aea < 300 && t_sur < 300, d.str()};
}

// 7. Desk-scale posterior comparison against the exchange algorithm.
Outcome desk_scale_trend() {
  const auto m = ModelSpec::potts(6, 32, 32, {0.0, 2.5});
  Rng data_rng(7, streams::kSimulate);
  const LabelField z = simulate_field(m, make_vec(1.274), 500, data_rng);

  RunConfig config;
  config.iterations = 20000;
  config.burn_in = 2000;
  config.seed = 7;
  auto start = std::chrono::steady_clock::now();
  const Chain aea = run_aea(m, z, config);
  const double t_aea = seconds_since(start);
  const auto aea_betas = aea.retained_betas();
  const double aea_mean = summarize(aea_betas).mean[0];

  const MonteCarloMoments source(m, SamplerBudget{}, 7);
  const auto grad = tune_kappa(m, analytic_beta_crit(m), 10, source).grid;
  const auto equi = build_equidistant_grid(m, {5}, source);

  RunConfig sconfig = config;
  sconfig.iterations = 100000;
  sconfig.burn_in = 5000;
  struct Case {
    const char* name;
    const SurrogateGrid* grid;
    InterpolationScheme scheme;
    double kl = 0.0;
    double mean = 0.0;
    double seconds = 0.0;
  };
  Case cases[] = {{"grad hermite", &grad, InterpolationScheme::Hermite},
                  {"grad linear", &grad, InterpolationScheme::PiecewiseLinear},
                  {"equi5 linear", &equi, InterpolationScheme::PiecewiseLinear}};
  for (auto& c : cases) {
    start = std::chrono::steady_clock::now();
    const Chain chain = run_surrogate(m, z, *c.grid, c.scheme, sconfig);
    c.seconds = seconds_since(start);
    const auto betas = chain.retained_betas();
    c.kl = kl_divergence(betas, aea_betas).value;
    c.mean = summarize(betas).mean[0];
  }
  Detail d;
  d("grad knots", grad.size())("AEA mean", aea_mean)("AEA seconds", t_aea);
  bool pass = t_aea < 1800;
  const double baseline = cases[2].kl;
  for (int i = 0; i < 3; ++i) {
    d(std::string("KL ") + cases[i].name, cases[i].kl)(std::string("mean ") + cases[i].name,
                                                        cases[i].mean);
    pass = pass && cases[i].seconds < 60;
  }
  for (int i = 0; i < 2; ++i) {
    pass = pass && cases[i].kl * 10 <= baseline && std::abs(cases[i].mean - aea_mean) <= 0.05;
  }
  return {pass, d.str()};
}

// 8. Per-iteration cost of the surrogate against the exchange algorithm.
Outcome amortization() {
  const auto m = ModelSpec::potts(6, 100, 100, {0.0, 2.5});
  Rng data_rng(8, streams::kSimulate);
  const LabelField z = simulate_field(m, make_vec(1.274), 200, data_rng);
  const auto grid = build_equidistant_grid(m, {10}, MonteCarloMoments(m, SamplerBudget{100, 300, 1}, 8));
  RunConfig config;
  config.iterations = 1000;
  config.burn_in = 100;
  config.aux_sweeps = 100;
  config.seed = 8;
  auto start = std::chrono::steady_clock::now();
  run_aea(m, z, config);
  const double per_aea = seconds_since(start) / config.iterations;
  start = std::chrono::steady_clock::now();
  run_surrogate(m, z, grid, InterpolationScheme::Hermite, config);
  const double per_sur = seconds_since(start) / config.iterations;
  const double speedup = per_aea / per_sur;
  Detail d;
  d("AEA s/iter", per_aea)("surrogate s/iter", per_sur)("speedup", speedup);
  return {speedup >= 20.0 && per_aea * config.iterations < 900, d.str()};
}

// 9. Two-dimensional autologistic pipeline.
Outcome autologistic_pipeline() {
  const auto start = std::chrono::steady_clock::now();
  const auto m = ModelSpec::autologistic(16, 16, {-0.05, 0.05}, {0.5, 1.2});
  Rng data_rng(9, streams::kSimulate);
  const LabelField z = simulate_field(m, make_vec(0.01, 0.8), 500, data_rng);

  const MonteCarloMoments source(m, SamplerBudget{}, 9);
  const auto grid = tune_kappa(m, analytic_beta_crit(m), 30, source).grid;
  const Interpolant surrogate(grid, InterpolationScheme::Hermite);
  int failures = 0;
  for (const auto& p : uniform_points(m, 10000, 9)) {
    try {
      const Vec v = surrogate.value(p);
      if (!v.allFinite()) ++failures;
    } catch (const std::exception&) {
      ++failures;
    }
  }

  RunConfig config;
  config.iterations = 20000;
  config.burn_in = 2000;
  config.seed = 9;
  const Chain aea = run_aea(m, z, config);
  RunConfig sconfig = config;
  sconfig.iterations = 50000;
  sconfig.burn_in = 5000;
  const Chain sur = run_surrogate(m, z, grid, InterpolationScheme::Hermite, sconfig);
  const PosteriorSummary sa = summarize(aea.retained_betas());
  const PosteriorSummary ss = summarize(sur.retained_betas());
  const double t = seconds_since(start);

  Detail d;
  d("knots", grid.size())("extrapolation errors", failures)("AEA mean",
                                                            format_point_pair(sa.mean))(
      "AEA sd", format_point_pair(sa.sd))("surrogate mean", format_point_pair(ss.mean))(
      "seconds", t);
  bool pass = failures == 0 && t < 1200;
  for (int j = 0; j < 2; ++j) pass = pass && std::abs(ss.mean[j] - sa.mean[j]) <= 3.0 * sa.sd[j];
  return {pass, d.str()};
}

// 10. Byte-identical precompute and run outputs, including across thread counts.
Outcome determinism() {
  const std::string z = scratch("det_z.txt");
  const std::vector<std::string> model = {"--model", "autologistic", "--size", "8x8"};
  auto with = [&](std::vector<std::string> args) {
    args.insert(args.begin() + 1, model.begin(), model.end());
    return args;
  };
  bool ok = cli(with({"simulate", "--beta", "0.01,0.8", "--seed", "10", "--out", z})) == 0;
  std::string grids[3], chains[2], manifests[2];
  for (int i = 0; i < 3; ++i) {
    const std::string g = scratch("det_g" + std::to_string(i) + ".json");
    ok = ok && cli(with({"precompute", "--grid", "gradient", "--kappa", "0.6", "--seed", "10",
                         "--burnin", "50", "--samples", "100", "--threads", i == 2 ? "3" : "1",
                         "--out", g})) == 0;
    grids[i] = slurp(g);
  }
  for (int i = 0; i < 2; ++i) {
    const std::string c = scratch("det_chain.csv");
    ok = ok && cli(with({"run", "--algorithm", "surrogate", "--grid", scratch("det_g0.json"),
                         "--data", z, "--iters", "3000", "--burnin", "500", "--seed", "10",
                         "--out", c})) == 0;
    chains[i] = slurp(c);
    auto j = nlohmann::ordered_json::parse(slurp(c + ".json"));
    j.erase("wall_time_seconds");
    manifests[i] = j.dump();
  }
  std::string equi[2];
  for (int i = 0; i < 2; ++i) {
    const std::string g = scratch("det_e" + std::to_string(i) + ".json");
    ok = ok && cli({"precompute", "--size", "8x8", "--k", "3", "--grid", "equidistant", "--points",
                    "6", "--seed", "10", "--burnin", "50", "--samples", "100", "--threads",
                    i == 0 ? "1" : "4", "--out", g}) == 0;
    equi[i] = slurp(g);
  }
  Detail d;
  d("grid repeat identical", grids[0] == grids[1])("grid threads=3 identical", grids[0] == grids[2])(
      "equidistant threads=4 identical", equi[0] == equi[1])("chain identical",
                                                             chains[0] == chains[1])(
      "manifest identical", manifests[0] == manifests[1]);
  const bool pass = ok && !grids[0].empty() && grids[0] == grids[1] && grids[0] == grids[2] &&
                    equi[0] == equi[1] && !chains[0].empty() && chains[0] == chains[1] &&
                    manifests[0] == manifests[1];
  return {pass, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-10)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"oracle exactness", oracle_exactness},
      {"sampler stationarity", sampler_stationarity},
      {"gradient identity", gradient_identity},
      {"interpolation ordering", interpolation_ordering},
      {"path integral", path_integral},
      {"exact posterior recovery", posterior_recovery},
      {"desk-scale posterior trend", desk_scale_trend},
      {"amortization speedup", amortization},
      {"autologistic pipeline", autologistic_pipeline},
      {"determinism", determinism},
  };
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "--only must be between 1 and " << criteria.size() << '\n';
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
