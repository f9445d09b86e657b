#include <fstream>

#include "mrfgrid/core/enumeration.hpp"
#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/core/matrix_io.hpp"
#include "options.hpp"

namespace mrfgrid::cli {

namespace {

class Oracle final : public Command {
 public:
  void setup(CLI::App& sub) override {
    model_.add_to(sub);
    sub.add_option("--beta", beta_, "beta a[,b]")->required();
    sub.add_option("--data", data_, "label matrix; adds the exact posterior table");
    sub.add_option("--posterior-points", points_, "posterior table points per axis")
        ->capture_default_str();
    sub.add_option("--posterior-out", posterior_out_, "posterior CSV path; default stdout");
  }

  void run(std::ostream& out) override {
    const ModelSpec model = model_.model();
    const ParamPoint beta = parse_point(beta_);
    if (beta.size() != model.dim()) throw UsageError("--beta has the wrong dimension");
    const ExactOracle oracle(model);
    const StatVector s = oracle.expected_stat(beta);

    out << "configurations: " << oracle.configurations() << '\n';
    out << "C: " << format_double(oracle.normalizer(beta)) << '\n';
    out << "log C: " << format_double(oracle.log_normalizer(beta)) << '\n';
    out << "E[S]: " << format_point(s.mean) << '\n';
    out << "Cov(S):";
    for (Eigen::Index i = 0; i < s.cov.rows(); ++i) {
      out << (i == 0 ? " " : "; ") << format_point(s.cov.row(i).transpose());
    }
    out << '\n';

    if (data_.empty()) return;
    if (points_ < 2) throw UsageError("--posterior-points must be at least 2");
    const LabelField z = labels_from_matrix(model, read_matrix(std::filesystem::path(data_)));
    std::vector<std::vector<double>> axes;
    for (const auto& b : model.bounds()) axes.push_back(linspace(b.lo, b.hi, points_));
    const DensityTable table =
        exact_posterior_density(oracle, sufficient_stat(z).value, uniform_log_prior(model), axes);
    if (posterior_out_.empty()) {
      write_density_csv(out, table);
    } else {
      std::ofstream file(posterior_out_);
      if (!file) throw UsageError("cannot write " + posterior_out_);
      write_density_csv(file, table);
    }
  }

 private:
  ModelFlags model_;
  std::string beta_;
  std::string data_;
  int points_ = 501;
  std::string posterior_out_;
};

}  // namespace

std::unique_ptr<Command> make_oracle() { return std::make_unique<Oracle>(); }

}  // namespace mrfgrid::cli
