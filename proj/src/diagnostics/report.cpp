#include <ostream>

#include <json.hpp>

#include "mrfgrid/core/matrix_io.hpp"
#include "mrfgrid/diagnostics/diagnostics.hpp"

namespace mrfgrid {

namespace {

std::string join(const Vec& v) {
  std::string out;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (j > 0) out += ',';
    out += format_double(v[j]);
  }
  return out;
}

std::vector<double> to_vector(const Vec& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

void write_report(std::ostream& out, const Report& report) {
  nlohmann::ordered_json j;
  j["metric"] = report.metric;
  j["value"] = report.value;
  j["parameters"] = report.parameters;
  j["seeds"] = report.seeds;
  out << j.dump(2) << '\n';
}

Report kl_report(const KlEstimate& kl) {
  Report r;
  r.metric = "kl";
  r.value = {kl.value};
  std::string bins, support;
  for (std::size_t j = 0; j < kl.bins.size(); ++j) {
    if (j > 0) {
      bins += 'x';
      support += ',';
    }
    bins += std::to_string(kl.bins[j]);
    support += format_double(kl.support[j].lo) + ':' + format_double(kl.support[j].hi);
  }
  r.parameters = {{"bins", bins}, {"support", support}, {"epsilon", format_double(kl.epsilon)}};
  return r;
}

Report rmse_report(const RmseReport& rmse, const SurrogateGrid& grid, InterpolationScheme scheme) {
  Report r;
  r.metric = "rmse";
  r.value = to_vector(rmse.rmse);
  r.parameters = {{"n_test", std::to_string(rmse.n_test)},
                  {"scheme", std::string(to_string(scheme))},
                  {"grid", std::string(to_string(grid.kind()))},
                  {"knots", std::to_string(grid.size())}};
  r.seeds = {{"test_points", rmse.seed}, {"grid", grid.sampling().seed}};
  return r;
}

Report summary_report(const PosteriorSummary& summary) {
  Report r;
  r.metric = "summary";
  r.value = to_vector(summary.mean);
  r.parameters = {{"mean", join(summary.mean)},
                  {"mode", join(summary.mode)},
                  {"sd", join(summary.sd)},
                  {"lower_95", join(summary.lower)},
                  {"upper_95", join(summary.upper)},
                  {"n", std::to_string(summary.n)}};
  return r;
}

}  // namespace mrfgrid
