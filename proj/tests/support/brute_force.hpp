#pragma once

// Reference values computed directly from the definitions, without the
// library's lattice, enumeration or statistic code.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace mrfgrid::testing {

struct BruteModel {
  bool potts = true;
  int k = 2;
  int h = 1;
  int w = 1;
};

/// Labels 1..k (Potts) or -1/+1 (autologistic) of configuration `code`.
inline std::vector<int> decode(const BruteModel& m, std::uint64_t code) {
  std::vector<int> z(static_cast<std::size_t>(m.h * m.w));
  for (auto& v : z) {
    const int digit = static_cast<int>(code % static_cast<std::uint64_t>(m.k));
    code /= static_cast<std::uint64_t>(m.k);
    v = m.potts ? digit + 1 : (digit == 0 ? -1 : 1);
  }
  return z;
}

/// Matching horizontal and vertical neighbour pairs, plus the label sum.
inline std::vector<double> stat_of(const BruteModel& m, const std::vector<int>& z) {
  double same = 0.0;
  double total = 0.0;
  for (int r = 0; r < m.h; ++r) {
    for (int c = 0; c < m.w; ++c) {
      const int v = z[static_cast<std::size_t>(r * m.w + c)];
      total += v;
      if (c + 1 < m.w && z[static_cast<std::size_t>(r * m.w + c + 1)] == v) same += 1.0;
      if (r + 1 < m.h && z[static_cast<std::size_t>((r + 1) * m.w + c)] == v) same += 1.0;
    }
  }
  if (m.potts) return {same};
  return {total, same};
}

inline std::uint64_t states(const BruteModel& m) {
  std::uint64_t n = 1;
  for (int i = 0; i < m.h * m.w; ++i) n *= static_cast<std::uint64_t>(m.k);
  return n;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Unnormalised weights exp(beta' S(z)) of every configuration, indexed by code.
inline std::vector<double> weights(const BruteModel& m, const std::vector<double>& beta) {
  std::vector<double> out(states(m));
  for (std::uint64_t code = 0; code < out.size(); ++code) {
    out[code] = std::exp(dot(beta, stat_of(m, decode(m, code))));
  }
  return out;
}

inline double normalizer(const BruteModel& m, const std::vector<double>& beta) {
  double c = 0.0;
  for (double v : weights(m, beta)) c += v;
  return c;
}

/// E[S] and Cov(S) (row-major) under p(z | beta).
inline void moments(const BruteModel& m, const std::vector<double>& beta,
                    std::vector<double>& mean, std::vector<double>& cov) {
  const auto wts = weights(m, beta);
  double c = 0.0;
  for (double v : wts) c += v;
  const std::size_t d = m.potts ? 1 : 2;
  mean.assign(d, 0.0);
  std::vector<double> second(d * d, 0.0);
  for (std::uint64_t code = 0; code < wts.size(); ++code) {
    const auto s = stat_of(m, decode(m, code));
    const double p = wts[code] / c;
    for (std::size_t i = 0; i < d; ++i) {
      mean[i] += p * s[i];
      for (std::size_t j = 0; j < d; ++j) second[i * d + j] += p * s[i] * s[j];
    }
  }
  cov.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) cov[i * d + j] = second[i * d + j] - mean[i] * mean[j];
  }
}

/// Posterior of a scalar beta under a uniform prior on [lo, hi], on `n`
/// equally spaced points, normalised by Simpson's rule (n odd).
inline std::vector<double> posterior_1d(const BruteModel& m, double observed, double lo, double hi,
                                        int n) {
  std::vector<double> dens(static_cast<std::size_t>(n));
  double top = -INFINITY;
  for (int i = 0; i < n; ++i) {
    const double b = lo + (hi - lo) * i / (n - 1);
    dens[static_cast<std::size_t>(i)] = b * observed - std::log(normalizer(m, {b}));
    top = std::max(top, dens[static_cast<std::size_t>(i)]);
  }
  for (auto& v : dens) v = std::exp(v - top);
  const double hstep = (hi - lo) / (n - 1);
  double area = dens.front() + dens.back();
  for (int i = 1; i + 1 < n; ++i) area += (i % 2 ? 4.0 : 2.0) * dens[static_cast<std::size_t>(i)];
  area *= hstep / 3.0;
  for (auto& v : dens) v /= area;
  return dens;
}

}  // namespace mrfgrid::testing
