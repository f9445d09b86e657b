#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/core/matrix_io.hpp"
#include "mrfgrid/mcmc/mcmc.hpp"
#include "mrfgrid/samplers/samplers.hpp"
#include "options.hpp"

namespace mrfgrid::cli {

namespace {

class Simulate final : public Command {
 public:
  void setup(CLI::App& sub) override {
    sub_ = &sub;
    model_.add_to(sub);
    sub.add_option("--beta", beta_, "beta a[,b]")->required();
    sub.add_option("--sweeps", sweeps_, "forward-sampler steps from a uniform start")
        ->capture_default_str();
    sub.add_option("--seed", seed_, "random seed")->capture_default_str();
    sub.add_option("--noise-sd", noise_sd_, "Gaussian pixel noise standard deviation");
    sub.add_option("--noise-means", noise_means_, "per-label means m_1,..,m_k; default the labels");
    sub.add_option("--out", out_, "label matrix path")->required();
    sub.add_option("--image-out", image_out_, "noisy image matrix path");
  }

  void run(std::ostream& out) override {
    const ModelSpec model = model_.model();
    const ParamPoint beta = parse_point(beta_);
    if (beta.size() != model.dim()) throw UsageError("--beta has the wrong dimension");
    if (!model.contains(beta)) throw DomainError("--beta lies outside the parameter space");
    if (sweeps_ < 0) throw UsageError("--sweeps must be nonnegative");
    if (image_out_.empty() != !(noise_sd_ > 0.0)) {
      throw UsageError("--noise-sd > 0 and --image-out go together");
    }

    Rng rng(seed_, streams::kSimulate);
    const LabelField z = simulate_field(model, beta, sweeps_, rng);
    write_matrix(std::filesystem::path(out_), to_matrix(z));
    const Vec stat = sufficient_stat(z).value;
    out << "statistic: " << format_point(stat) << '\n';

    if (!image_out_.empty()) {
      std::vector<double> means;
      if (noise_means_.empty()) {
        for (int s = 0; s < model.k(); ++s) means.push_back(model.label_of(s));
      } else {
        means = parse_means(noise_means_);
      }
      if (static_cast<int>(means.size()) != model.k()) {
        throw UsageError("--noise-means needs one value per label");
      }
      NumericMatrix image = to_matrix(z);
      for (double& y : image.values) {
        y = means[static_cast<std::size_t>(model.state_of(static_cast<int>(y)))] +
            noise_sd_ * rng.normal();
      }
      write_matrix(std::filesystem::path(image_out_), image);
    }

    nlohmann::ordered_json manifest;
    manifest["command"] = "simulate";
    manifest["flags"] = flags_json(*sub_);
    manifest["seed"] = seed_;
    manifest["streams"] = {{"simulate", streams::kSimulate}};
    manifest["statistic"] = std::vector<double>(stat.begin(), stat.end());
    write_json(out_ + ".json", manifest);
  }

 private:
  static std::vector<double> parse_means(const std::string& text) {
    std::vector<double> values;
    std::size_t start = 0;
    for (;;) {
      const auto pos = text.find(',', start);
      values.push_back(parse_point(text.substr(start, pos - start))[0]);
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    return values;
  }

  CLI::App* sub_ = nullptr;
  ModelFlags model_;
  std::string beta_;
  int sweeps_ = 500;
  std::uint64_t seed_ = 1;
  double noise_sd_ = 0.0;
  std::string noise_means_;
  std::string out_;
  std::string image_out_;
};

}  // namespace

std::unique_ptr<Command> make_simulate() { return std::make_unique<Simulate>(); }

}  // namespace mrfgrid::cli
