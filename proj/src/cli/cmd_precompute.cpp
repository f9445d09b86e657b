#include <memory>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/core/matrix_io.hpp"
#include "mrfgrid/mcmc/mcmc.hpp"
#include "mrfgrid/surrogate/grid_builder.hpp"
#include "mrfgrid/surrogate/grid_io.hpp"
#include "options.hpp"

namespace mrfgrid::cli {

namespace {

class Precompute final : public Command {
 public:
  void setup(CLI::App& sub) override {
    model_.add_to(sub);
    sub.add_option("--grid", grid_, "equidistant or gradient")->capture_default_str();
    auto* points = sub.add_option("--points", points_, "equidistant points: n or n1xn2");
    auto* kappa = sub.add_option("--kappa", kappa_, "gradient step-rule constant");
    auto* target = sub.add_option("--target-points", target_, "gradient grid knot budget");
    points->excludes(kappa)->excludes(target);
    kappa->excludes(target);
    sub.add_option("--beta-crit", beta_crit_, "gradient grid start a[,b]; default analytic");
    sub.add_option("--seed", seed_, "random seed")->capture_default_str();
    sub.add_option("--burnin", budget_.burn_in, "sampler burn-in per knot")->capture_default_str();
    sub.add_option("--samples", budget_.n_samples, "retained draws per knot")->capture_default_str();
    sub.add_option("--thin", budget_.thin, "thinning")->capture_default_str();
    sub.add_option("--threads", threads_, "worker threads")->capture_default_str();
    sub.add_flag("--exact", exact_, "fill knots by enumeration instead of simulation");
    sub.add_option("--out", out_, "grid JSON path")->required();
  }

  void run(std::ostream& out) override {
    const ModelSpec model = model_.model();
    if (threads_ < 1) throw UsageError("--threads must be at least 1");
    std::unique_ptr<MomentSource> source;
    if (exact_) {
      source = std::make_unique<ExactMoments>(model);
    } else {
      source = std::make_unique<MonteCarloMoments>(model, budget_, seed_);
    }

    const GridKind kind = parse_grid_kind(grid_);
    const int choices = !points_.empty() + (kappa_ > 0) + (target_ > 0);
    if (choices != 1) throw UsageError("give exactly one of --points, --kappa, --target-points");

    std::optional<SurrogateGrid> grid;
    if (kind == GridKind::Equidistant) {
      if (points_.empty()) throw UsageError("equidistant grids take --points");
      grid = build_equidistant_grid(model, parse_counts(points_, model.dim()), *source, threads_);
    } else {
      if (!points_.empty()) throw UsageError("gradient grids take --kappa or --target-points");
      const ParamPoint crit =
          beta_crit_.empty() ? analytic_beta_crit(model) : parse_point(beta_crit_);
      if (crit.size() != model.dim()) throw UsageError("--beta-crit has the wrong dimension");
      if (target_ > 0) {
        grid = tune_kappa(model, crit, target_, *source, threads_).grid;
      } else {
        GradientGridOptions options;
        options.kappa = kappa_;
        options.threads = threads_;
        grid = build_gradient_grid(model, crit, *source, options);
      }
    }
    write_grid(out_, *grid);
    const long steps = exact_ ? 0 : static_cast<long>(grid->size()) * budget_.steps();
    out << "knots: " << grid->size() << '\n';
    out << "sampler steps: " << steps << '\n';
    if (kind == GridKind::GradientBased) out << "kappa: " << format_double(grid->kappa()) << '\n';
  }

 private:
  ModelFlags model_;
  std::string grid_ = "gradient";
  std::string points_;
  double kappa_ = 0.0;
  int target_ = 0;
  std::string beta_crit_;
  std::uint64_t seed_ = 1;
  SamplerBudget budget_;
  int threads_ = 1;
  bool exact_ = false;
  std::string out_;
};

}  // namespace

std::unique_ptr<Command> make_precompute() { return std::make_unique<Precompute>(); }

}  // namespace mrfgrid::cli
