#include <algorithm>
#include <cmath>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/diagnostics/diagnostics.hpp"

namespace mrfgrid {

namespace {

/// Row-major product histogram over `support`.
class Histogram {
 public:
  Histogram(std::vector<Interval> support, std::vector<int> bins)
      : support_(std::move(support)), bins_(std::move(bins)) {
    std::size_t cells = 1;
    for (int b : bins_) cells *= static_cast<std::size_t>(b);
    mass_.assign(cells, 0.0);
  }

  void add(const Vec& x, double weight = 1.0) {
    std::size_t cell = 0;
    for (std::size_t j = 0; j < bins_.size(); ++j) {
      const Interval& s = support_[j];
      const double t = (x[static_cast<Eigen::Index>(j)] - s.lo) / s.width();
      const int b = std::clamp(static_cast<int>(std::floor(t * bins_[j])), 0, bins_[j] - 1);
      cell = cell * static_cast<std::size_t>(bins_[j]) + static_cast<std::size_t>(b);
    }
    mass_[cell] += weight;
  }

  std::vector<double> probabilities(double epsilon) const {
    double total = 0.0;
    for (double m : mass_) total += m;
    std::vector<double> p(mass_.size());
    double floored = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = std::max(mass_[i] / total, epsilon);
      floored += p[i];
    }
    for (double& v : p) v /= floored;
    return p;
  }

 private:
  std::vector<Interval> support_;
  std::vector<int> bins_;
  std::vector<double> mass_;
};

double kl_of(const std::vector<double>& p, const std::vector<double>& q) {
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) kl += p[i] * std::log(p[i] / q[i]);
  return std::max(kl, 0.0);
}

std::vector<int> default_bins(int dim, int bins) {
  if (bins <= 0) bins = dim == 1 ? 100 : 30;
  if (bins < 2) throw UsageError("need at least 2 bins");
  return std::vector<int>(static_cast<std::size_t>(dim), bins);
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1e-2)) throw UsageError("epsilon must lie in (0, 0.01)");
}

}  // namespace

KlEstimate kl_divergence(const std::vector<Vec>& p, const std::vector<Vec>& q, int bins,
                         double epsilon) {
  if (p.empty() || q.empty()) throw UsageError("KL needs two nonempty sample sets");
  check_epsilon(epsilon);
  const auto dim = p.front().size();
  std::vector<Interval> support(static_cast<std::size_t>(dim),
                                Interval{INFINITY, -INFINITY});
  for (const auto* set : {&p, &q}) {
    for (const Vec& x : *set) {
      if (x.size() != dim) throw MismatchError("samples have different dimensions");
      for (Eigen::Index j = 0; j < dim; ++j) {
        auto& s = support[static_cast<std::size_t>(j)];
        s.lo = std::min(s.lo, x[j]);
        s.hi = std::max(s.hi, x[j]);
      }
    }
  }
  for (const auto& s : support) {
    if (!(s.width() > 0.0)) throw UsageError("samples are single-valued; KL undefined");
  }

  KlEstimate out;
  out.bins = default_bins(static_cast<int>(dim), bins);
  out.support = support;
  out.epsilon = epsilon;
  Histogram hp(support, out.bins);
  Histogram hq(support, out.bins);
  for (const Vec& x : p) hp.add(x);
  for (const Vec& x : q) hq.add(x);
  out.value = kl_of(hp.probabilities(epsilon), hq.probabilities(epsilon));
  return out;
}

KlEstimate kl_divergence(std::span<const double> p, std::span<const double> q, int bins,
                         double epsilon) {
  std::vector<Vec> vp, vq;
  vp.reserve(p.size());
  vq.reserve(q.size());
  for (double x : p) vp.push_back(make_vec(x));
  for (double x : q) vq.push_back(make_vec(x));
  return kl_divergence(vp, vq, bins, epsilon);
}

KlEstimate kl_to_density(const DensityTable& exact, const std::vector<Vec>& samples, int bins,
                         double epsilon) {
  if (samples.empty()) throw UsageError("KL needs a nonempty sample set");
  if (exact.points.size() != exact.density.size() || exact.points.empty()) {
    throw UsageError("malformed density table");
  }
  check_epsilon(epsilon);
  const auto dim = exact.axes.size();
  std::vector<Interval> support;
  for (const auto& axis : exact.axes) {
    if (axis.size() < 2) throw UsageError("density table needs at least two points per axis");
    support.push_back({axis.front(), axis.back()});
  }

  // trapezoid weight of each table point (beta_2 fastest)
  auto axis_weight = [](const std::vector<double>& axis, std::size_t i) {
    const double left = i > 0 ? axis[i] - axis[i - 1] : 0.0;
    const double right = i + 1 < axis.size() ? axis[i + 1] - axis[i] : 0.0;
    return 0.5 * (left + right);
  };

  KlEstimate out;
  out.bins = default_bins(static_cast<int>(dim), bins);
  out.support = support;
  out.epsilon = epsilon;
  Histogram hp(support, out.bins);
  Histogram hq(support, out.bins);
  const std::size_t inner = dim == 2 ? exact.axes[1].size() : 1;
  for (std::size_t i = 0; i < exact.points.size(); ++i) {
    double w = axis_weight(exact.axes[0], i / inner);
    if (dim == 2) w *= axis_weight(exact.axes[1], i % inner);
    hp.add(exact.points[i], w * exact.density[i]);
  }
  for (const Vec& x : samples) {
    if (static_cast<std::size_t>(x.size()) != dim) throw MismatchError("sample dimension mismatch");
    hq.add(x);
  }
  out.value = kl_of(hp.probabilities(epsilon), hq.probabilities(epsilon));
  return out;
}

}  // namespace mrfgrid
