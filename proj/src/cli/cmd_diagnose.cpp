#include <fstream>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/diagnostics/diagnostics.hpp"
#include "mrfgrid/mcmc/mcmc.hpp"
#include "mrfgrid/surrogate/grid_io.hpp"
#include "options.hpp"

namespace mrfgrid::cli {

namespace {

std::vector<Vec> betas_of(const std::string& path) {
  if (path.empty()) throw UsageError("chain path missing");
  const Chain chain = read_chain_csv(std::filesystem::path(path));
  std::vector<Vec> out;
  out.reserve(chain.records.size());
  for (const auto& rec : chain.records) out.push_back(rec.beta);
  return out;
}

class Diagnose final : public Command {
 public:
  void setup(CLI::App& sub) override {
    sub.add_option("--mode", mode_, "kl, rmse or summary")->required();
    sub.add_option("--chain", chain_, "chain CSV (kl: first chain, p)");
    sub.add_option("--reference", reference_, "second chain CSV for kl (q)");
    sub.add_option("--bins", bins_, "histogram bins per axis; default 100 (D=1) or 30 (D=2)");
    sub.add_option("--burnin", burn_in_, "leading rows to skip")->capture_default_str();
    sub.add_option("--grid", grid_, "grid JSON for rmse");
    sub.add_option("--scheme", scheme_, "linear or hermite")->capture_default_str();
    sub.add_option("--n-test", n_test_, "rmse test points")->capture_default_str();
    sub.add_option("--seed", seed_, "test-point and reference seed")->capture_default_str();
    sub.add_flag("--exact", exact_, "rmse reference by enumeration");
    sub.add_option("--ref-burnin", budget_.burn_in, "reference sampler burn-in")
        ->capture_default_str();
    sub.add_option("--ref-samples", budget_.n_samples, "reference draws per test point")
        ->capture_default_str();
    sub.add_option("--out", out_, "report JSON path; default stdout");
  }

  void run(std::ostream& out) override {
    Report report;
    if (mode_ == "kl") {
      auto p = betas_of(chain_);
      auto q = betas_of(reference_);
      report = kl_report(kl_divergence(drop(std::move(p)), drop(std::move(q)), bins_));
    } else if (mode_ == "summary") {
      report = summary_report(summarize(betas_of(chain_), burn_in_));
    } else if (mode_ == "rmse") {
      if (grid_.empty()) throw UsageError("--grid is required for rmse");
      const SurrogateGrid grid = read_grid(std::filesystem::path(grid_));
      const InterpolationScheme scheme = parse_scheme(scheme_);
      std::unique_ptr<MomentSource> truth;
      if (exact_) {
        truth = std::make_unique<ExactMoments>(grid.model());
      } else {
        truth = std::make_unique<MonteCarloMoments>(grid.model(), budget_, seed_);
      }
      report = rmse_report(interpolation_rmse(grid, scheme, *truth, n_test_, seed_), grid, scheme);
      report.parameters["reference"] = exact_ ? "exact" : "monte-carlo";
    } else {
      throw UsageError("unknown --mode '" + mode_ + "'");
    }

    if (out_.empty()) {
      write_report(out, report);
    } else {
      std::ofstream file(out_);
      if (!file) throw UsageError("cannot write " + out_);
      write_report(file, report);
    }
  }

 private:
  std::vector<Vec> drop(std::vector<Vec> samples) const {
    if (samples.size() <= burn_in_) throw UsageError("no samples left after --burnin");
    samples.erase(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(burn_in_));
    return samples;
  }

  std::string mode_;
  std::string chain_;
  std::string reference_;
  int bins_ = 0;
  std::size_t burn_in_ = 0;
  std::string grid_;
  std::string scheme_ = "hermite";
  int n_test_ = 1000;
  std::uint64_t seed_ = 1;
  bool exact_ = false;
  SamplerBudget budget_;
  std::string out_;
};

}  // namespace

std::unique_ptr<Command> make_diagnose() { return std::make_unique<Diagnose>(); }

}  // namespace mrfgrid::cli
