#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mrfgrid/core/enumeration.hpp"
#include "mrfgrid/core/model.hpp"
#include "mrfgrid/surrogate/grid.hpp"
#include "mrfgrid/surrogate/moment_source.hpp"

namespace mrfgrid {

inline constexpr double kKlEpsilon = 1e-12;

struct KlEstimate {
  double value = 0.0;
  /// Bins per dimension.
  std::vector<int> bins;
  std::vector<Interval> support;
  double epsilon = kKlEpsilon;
};

/// KL(p || q) between two sample sets from equal-width histograms over the
/// pooled range. Bin probabilities are floored at epsilon and renormalised,
/// so disjoint samples give about log(1 / epsilon). `bins` <= 0 selects 100
/// for D = 1 and 30 per axis for D = 2. Throws UsageError for empty or
/// single-valued samples.
KlEstimate kl_divergence(const std::vector<Vec>& p, const std::vector<Vec>& q, int bins = 0,
                         double epsilon = kKlEpsilon);
KlEstimate kl_divergence(std::span<const double> p, std::span<const double> q, int bins = 100,
                         double epsilon = kKlEpsilon);

/// KL(exact || samples), binning the tabulated density over its own axes
/// range. Table points carry trapezoid mass into the bin that contains them.
KlEstimate kl_to_density(const DensityTable& exact, const std::vector<Vec>& samples, int bins = 0,
                         double epsilon = kKlEpsilon);

struct RmseReport {
  /// Root mean squared residual per component of E[S].
  Vec rmse;
  int n_test = 0;
  std::uint64_t seed = 0;
};

/// Residuals between the interpolant and `truth` at n_test uniform points in
/// P drawn from the test-points stream of `seed`. Monte Carlo truth at test
/// point i uses its own stream, disjoint from the knot streams.
RmseReport interpolation_rmse(const SurrogateGrid& grid, InterpolationScheme scheme,
                              const MomentSource& truth, int n_test, std::uint64_t seed);

/// Same, at given points.
RmseReport interpolation_rmse(const SurrogateGrid& grid, InterpolationScheme scheme,
                              const MomentSource& truth, const std::vector<ParamPoint>& points);

std::vector<ParamPoint> uniform_points(const ModelSpec& model, int n, std::uint64_t seed);

struct PosteriorSummary {
  Vec mean;
  Vec mode;
  Vec sd;
  Vec lower;
  Vec upper;
  std::size_t n = 0;
};

/// Componentwise mean, histogram mode (100 bins), standard deviation and
/// central 95% interval of samples[burn_in..].
PosteriorSummary summarize(const std::vector<Vec>& samples, std::size_t burn_in = 0);

/// Empirical quantile with linear interpolation between order statistics.
double quantile(std::vector<double> values, double p);

/// `{metric, value, parameters, seeds}`.
struct Report {
  std::string metric;
  std::vector<double> value;
  std::map<std::string, std::string> parameters;
  std::map<std::string, std::uint64_t> seeds;
};

void write_report(std::ostream& out, const Report& report);
Report kl_report(const KlEstimate& kl);
Report rmse_report(const RmseReport& rmse, const SurrogateGrid& grid, InterpolationScheme scheme);
Report summary_report(const PosteriorSummary& summary);

}  // namespace mrfgrid
