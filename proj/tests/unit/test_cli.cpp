#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mrfgrid/cli/cli.hpp"
#include "mrfgrid/core/matrix_io.hpp"
#include "mrfgrid/core/model.hpp"

using namespace mrfgrid;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mrfgrid");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "mrfgrid_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("oracle subcommand") {
  auto r = cli({"oracle", "--size", "3x3", "--beta", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("C: 512\n") != std::string::npos);
  CHECK(r.out.find("E[S]: 6\n") != std::string::npos);
  r = cli({"oracle", "--size", "1x2", "--beta", "1"});
  CHECK(r.out.find("C: 7.43656") != std::string::npos);
  CHECK(cli({"oracle", "--size", "5x5", "--k", "6", "--beta", "0"}).code == kExitInfeasible);
  CHECK(cli({"oracle", "--size", "3x3", "--beta", "0,1"}).code == kExitUsage);

  const fs::path data = scratch("oracle_z.txt");
  std::ofstream(data) << "1 1 1\n1 1 2\n2 2 2\n";
  r = cli({"oracle", "--size", "3x3", "--beta", "1", "--data", data.string(), "--posterior-points",
           "11"});
  CHECK(r.code == 0);
  CHECK(r.out.find("beta_1,density\n0,") != std::string::npos);
}

TEST_CASE("precompute subcommand") {
  const fs::path g = scratch("grid.json");
  auto r = cli({"precompute", "--model", "autologistic", "--size", "3x3", "--grid", "equidistant",
                "--points", "13x13", "--exact", "--out", g.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("knots: 169\n") != std::string::npos);
  CHECK(nlohmann::json::parse(slurp(g))["knots"].size() == 169u);

  r = cli({"precompute", "--size", "3x3", "--k", "6", "--grid", "gradient", "--target-points", "10",
           "--exact", "--out", g.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("knots: 10\n") != std::string::npos);

  r = cli({"precompute", "--size", "4x4", "--grid", "equidistant", "--points", "5", "--samples",
           "50", "--burnin", "10", "--out", g.string()});
  CHECK(r.out.find("sampler steps: 300\n") != std::string::npos);

  CHECK(cli({"precompute", "--size", "3x3", "--grid", "equidistant", "--points", "1", "--exact",
             "--out", g.string()}).code == kExitUsage);
  CHECK(cli({"precompute", "--size", "3x3", "--points", "5", "--kappa", "1", "--out", g.string()})
            .code == kExitUsage);
  CHECK(cli({"precompute", "--size", "3x3", "--grid", "gradient", "--exact", "--out", g.string()})
            .code == kExitUsage);
  CHECK(cli({"precompute", "--size", "3x3", "--bounds", "0-2", "--grid", "equidistant", "--points",
             "4", "--exact", "--out", g.string()}).code == kExitUsage);
  CHECK(cli({"precompute", "--size", "3x3", "--grid", "gradient", "--target-points", "2", "--exact",
             "--out", g.string()}).code == kExitUsage);
}

TEST_CASE("simulate subcommand") {
  const fs::path z = scratch("sim.txt");
  const fs::path y = scratch("sim_y.txt");
  auto r = cli({"simulate", "--size", "20x20", "--k", "6", "--bounds", "0:2.5", "--beta", "1.274",
                "--seed", "3", "--out", z.string(), "--noise-sd", "0.5", "--image-out", y.string()});
  CHECK(r.code == 0);
  const auto m = ModelSpec::potts(6, 20, 20, {0.0, 2.5});
  const LabelField field = labels_from_matrix(m, read_matrix(z));
  const double s = sufficient_stat(field).value[0];
  CHECK(s >= 0.0);
  CHECK(s <= 760.0);
  CHECK(read_matrix(y).values.size() == 400u);
  CHECK(fs::exists(z.string() + ".json"));

  CHECK(cli({"simulate", "--size", "4x4", "--beta", "3", "--out", z.string()}).code == kExitUsage);
  CHECK(cli({"simulate", "--size", "4x4", "--beta", "1", "--noise-sd", "1", "--out", z.string()})
            .code == kExitUsage);
  r = cli({"simulate", "--model", "autologistic", "--size", "8x8", "--beta", "0.01,0.8", "--out",
           z.string()});
  CHECK(r.code == 0);
}

TEST_CASE("run and diagnose subcommands") {
  const fs::path z = scratch("run_z.txt");
  const fs::path g = scratch("run_g.json");
  const fs::path c = scratch("run_c.csv");
  const fs::path a = scratch("run_a.csv");
  REQUIRE(cli({"simulate", "--size", "3x3", "--beta", "0.6", "--seed", "2", "--out", z.string()})
              .code == 0);
  REQUIRE(cli({"precompute", "--size", "3x3", "--grid", "equidistant", "--points", "20", "--exact",
               "--out", g.string()}).code == 0);
  auto r = cli({"run", "--algorithm", "surrogate", "--scheme", "hermite", "--grid", g.string(),
                "--size", "3x3", "--data", z.string(), "--iters", "2000", "--burnin", "200",
                "--seed", "1", "--out", c.string()});
  CHECK(r.code == 0);
  const auto manifest = nlohmann::json::parse(slurp(c.string() + ".json"));
  CHECK(manifest["seed"] == 1);
  CHECK(manifest.contains("wall_time_seconds"));
  CHECK(manifest["flags"]["algorithm"] == "surrogate");
  CHECK(slurp(c).substr(0, 31) == "iter,beta_1,stat_1,accepted\n201");

  r = cli({"run", "--algorithm", "aea", "--size", "3x3", "--data", z.string(), "--iters", "500",
           "--burnin", "100", "--aux-sweeps", "10", "--out", a.string()});
  CHECK(r.code == 0);

  CHECK(cli({"run", "--size", "3x3", "--data", z.string(), "--iters", "0", "--out", c.string()})
            .code == kExitUsage);
  CHECK(cli({"run", "--algorithm", "surrogate", "--grid", g.string(), "--size", "3x3", "--k", "3",
             "--data", z.string(), "--iters", "10", "--burnin", "0", "--out", c.string()})
            .code == kExitMismatch);
  CHECK(cli({"run", "--algorithm", "surrogate", "--grid", g.string(), "--size", "3x3", "--bounds",
             "0:3", "--data", z.string(), "--iters", "10", "--burnin", "0", "--out", c.string()})
            .code == kExitMismatch);
  CHECK(cli({"run", "--size", "4x4", "--data", z.string(), "--iters", "10", "--burnin", "0",
             "--out", c.string()}).code == kExitMismatch);
  CHECK(cli({"run", "--algorithm", "magic", "--size", "3x3", "--data", z.string(), "--out",
             c.string()}).code == kExitUsage);

  r = cli({"diagnose", "--mode", "kl", "--chain", c.string(), "--reference", c.string()});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"][0] == 0.0);
  r = cli({"diagnose", "--mode", "kl", "--chain", c.string(), "--reference", a.string()});
  CHECK(r.code == 0);
  r = cli({"diagnose", "--mode", "summary", "--chain", c.string()});
  CHECK(nlohmann::json::parse(r.out)["metric"] == "summary");
  r = cli({"diagnose", "--mode", "rmse", "--grid", g.string(), "--exact", "--n-test", "100"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"][0].get<double>() < 0.01);

  const fs::path two = scratch("two.csv");
  std::ofstream(two) << "iter,beta_1,beta_2,stat_1,stat_2,accepted\n1,0,0.6,1,2,1\n2,0.01,0.7,1,2,0\n";
  CHECK(cli({"diagnose", "--mode", "kl", "--chain", c.string(), "--reference", two.string()}).code ==
        kExitMismatch);
}

TEST_CASE("usage errors and help") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"oracle"}).code == kExitUsage);
  CHECK(cli({"oracle", "--size", "3x3", "--beta", "0", "--model", "ising"}).code == kExitUsage);
}
