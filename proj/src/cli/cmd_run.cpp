#include <chrono>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/core/matrix_io.hpp"
#include "mrfgrid/mcmc/mcmc.hpp"
#include "mrfgrid/surrogate/grid_io.hpp"
#include "options.hpp"

namespace mrfgrid::cli {

namespace {

class Run final : public Command {
 public:
  void setup(CLI::App& sub) override {
    sub_ = &sub;
    model_.add_to(sub);
    sub.add_option("--algorithm", algorithm_, "aea, surrogate or hidden-potts")
        ->capture_default_str();
    sub.add_option("--beta-update", beta_update_, "hidden-potts beta move: exchange or surrogate")
        ->capture_default_str();
    sub.add_option("--scheme", scheme_, "linear or hermite")->capture_default_str();
    sub.add_option("--grid", grid_, "grid JSON from precompute");
    sub.add_option("--data", data_, "label matrix (image matrix for hidden-potts)")->required();
    sub.add_option("--iters", config_.iterations, "iterations")->capture_default_str();
    sub.add_option("--burnin", config_.burn_in, "burn-in iterations")->capture_default_str();
    sub.add_option("--seed", config_.seed, "random seed")->capture_default_str();
    sub.add_option("--aux-sweeps", config_.aux_sweeps, "auxiliary sampler steps per exchange move")
        ->capture_default_str();
    sub.add_option("--beta-init", beta_init_, "initial beta a[,b]; default centre of P");
    sub.add_option("--proposal-sd", proposal_sd_, "initial proposal sd s[,s2]");
    sub.add_flag("--no-adapt", no_adapt_, "keep the proposal fixed during burn-in");
    sub.add_option("--out", out_, "chain CSV path")->required();
    sub.add_option("--manifest", manifest_, "run manifest path; default <out>.json");
  }

  void run(std::ostream& out) override {
    const ModelSpec model = model_.model();
    RunConfig config = config_;
    if (!beta_init_.empty()) config.beta_init = parse_point(beta_init_);
    if (!proposal_sd_.empty()) config.proposal.sd = parse_point(proposal_sd_);
    config.proposal.adapt = !no_adapt_;
    config.validate();
    const InterpolationScheme scheme = parse_scheme(scheme_);
    const NumericMatrix data = read_matrix(std::filesystem::path(data_));

    std::optional<SurrogateGrid> grid;
    auto load_grid = [&] {
      if (grid_.empty()) throw UsageError("--grid is required for surrogate moves");
      grid = read_grid(std::filesystem::path(grid_));
      check_grid_matches(model, *grid);
    };

    const auto start = std::chrono::steady_clock::now();
    Chain chain;
    nlohmann::ordered_json used_streams = {{"chain", streams::kChain}};
    if (algorithm_ == "aea") {
      chain = run_aea(model, labels_from_matrix(model, data), config);
      used_streams["aux"] = streams::kAux;
    } else if (algorithm_ == "surrogate") {
      load_grid();
      chain = run_surrogate(model, labels_from_matrix(model, data), *grid, scheme, config);
    } else if (algorithm_ == "hidden-potts") {
      if (data.rows != model.height() || data.cols != model.width()) {
        throw MismatchError("image dimensions do not match --size");
      }
      HiddenPottsConfig hidden;
      hidden.scheme = scheme;
      if (beta_update_ == "surrogate") {
        load_grid();
        hidden.update = BetaUpdate::Surrogate;
        hidden.grid = &*grid;
      } else if (beta_update_ == "exchange") {
        hidden.update = BetaUpdate::Exchange;
        used_streams["aux"] = streams::kAux;
      } else {
        throw UsageError("unknown --beta-update '" + beta_update_ + "'");
      }
      used_streams["labels"] = streams::kLabels;
      chain = run_hidden_potts(data.values, model, hidden, config);
    } else {
      throw UsageError("unknown --algorithm '" + algorithm_ + "'");
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    write_chain_csv(std::filesystem::path(out_), chain);

    nlohmann::ordered_json manifest;
    manifest["command"] = "run";
    manifest["flags"] = flags_json(*sub_);
    manifest["seed"] = config.seed;
    manifest["streams"] = used_streams;
    manifest["acceptance_rate"] = chain.acceptance_rate;
    manifest["final_proposal_sd"] =
        std::vector<double>(chain.final_proposal_sd.begin(), chain.final_proposal_sd.end());
    manifest["wall_time_seconds"] = seconds;
    write_json(manifest_.empty() ? out_ + ".json" : manifest_, manifest);

    out << "iterations: " << config.iterations << '\n';
    out << "acceptance rate: " << format_double(chain.acceptance_rate) << '\n';
  }

 private:
  CLI::App* sub_ = nullptr;
  ModelFlags model_;
  std::string algorithm_ = "aea";
  std::string beta_update_ = "exchange";
  std::string scheme_ = "hermite";
  std::string grid_;
  std::string data_;
  RunConfig config_;
  std::string beta_init_;
  std::string proposal_sd_;
  bool no_adapt_ = false;
  std::string out_;
  std::string manifest_;
};

}  // namespace

std::unique_ptr<Command> make_run() { return std::make_unique<Run>(); }

}  // namespace mrfgrid::cli
