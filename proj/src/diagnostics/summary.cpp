#include <algorithm>
#include <cmath>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/diagnostics/diagnostics.hpp"

namespace mrfgrid {

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw UsageError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - std::floor(h)) * (values[hi] - values[lo]);
}

PosteriorSummary summarize(const std::vector<Vec>& samples, std::size_t burn_in) {
  if (samples.size() <= burn_in) throw UsageError("no samples left after burn-in");
  const auto dim = samples.front().size();
  const std::size_t n = samples.size() - burn_in;
  PosteriorSummary out;
  out.n = n;
  out.mean = Vec::Zero(dim);
  out.mode = Vec(dim);
  out.sd = Vec(dim);
  out.lower = Vec(dim);
  out.upper = Vec(dim);

  for (Eigen::Index j = 0; j < dim; ++j) {
    std::vector<double> xs;
    xs.reserve(n);
    for (std::size_t i = burn_in; i < samples.size(); ++i) {
      if (samples[i].size() != dim) throw MismatchError("samples have different dimensions");
      xs.push_back(samples[i][j]);
    }
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    out.mean[j] = mean;
    out.sd[j] = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    out.lower[j] = quantile(xs, 0.025);
    out.upper[j] = quantile(xs, 0.975);

    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    if (!(*hi > *lo)) {
      out.mode[j] = *lo;
      continue;
    }
    constexpr int kBins = 100;
    std::vector<int> counts(kBins, 0);
    const double width = (*hi - *lo) / kBins;
    for (double x : xs) ++counts[std::min(static_cast<int>((x - *lo) / width), kBins - 1)];
    const auto top = std::max_element(counts.begin(), counts.end()) - counts.begin();
    out.mode[j] = *lo + (static_cast<double>(top) + 0.5) * width;
  }
  return out;
}

}  // namespace mrfgrid
