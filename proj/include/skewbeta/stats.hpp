#pragma once

// Kolmogorov-Smirnov tests, z-score moment tests and tabulated CDFs.

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "skewbeta/errors.hpp"
#include "skewbeta/quadrature.hpp"

namespace skewbeta {

struct KSResult {
  double statistic = 0.0;  // D
  std::size_t n1 = 0;
  std::size_t n2 = 0;      // 0 for one-sample tests
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov tail P(K > t) = 2 sum_{j>=1} (-1)^{j-1} e^{-2 j^2 t^2}.
inline double kolmogorov_tail(double t) {
  if (!(t > 0.0)) return 1.0;
  if (t < 0.2) return 1.0;  // the series is 1 to double precision here
  double s = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * t * t);
    s += (j % 2 == 1 ? term : -term);
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

namespace detail {

// Stephens' finite-sample adjustment of the asymptotic distribution.
inline double ks_p_value(double d, double effective_n) {
  const double root = std::sqrt(effective_n);
  return kolmogorov_tail((root + 0.12 + 0.11 / root) * d);
}

}  // namespace detail

inline KSResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw InputError("ks_two_sample: samples must be nonempty");
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> b(y.begin(), y.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KSResult r;
  r.statistic = d;
  r.n1 = a.size();
  r.n2 = b.size();
  r.p_value = detail::ks_p_value(d, na * nb / (na + nb));
  return r;
}

inline KSResult ks_one_sample(std::span<const double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) throw InputError("ks_one_sample: sample must be nonempty");
  std::vector<double> a(x.begin(), x.end());
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  KSResult r;
  r.statistic = std::clamp(d, 0.0, 1.0);
  r.n1 = a.size();
  r.p_value = detail::ks_p_value(r.statistic, n);
  return r;
}

/// (sample mean - target mean) / sqrt(target variance / N).
inline double moment_test(std::span<const double> sample, double target_mean, double target_variance) {
  if (sample.size() < 100) throw InputError("moment_test: need at least 100 observations");
  if (!(target_variance > 0.0)) throw ParameterError("moment_test: target variance must be positive");
  double s = 0.0;
  for (double v : sample) s += v;
  const double n = static_cast<double>(sample.size());
  return (s / n - target_mean) / std::sqrt(target_variance / n);
}

/// CDF tabulated on a grid by integrating a density cell by cell; evaluated by
/// linear interpolation, which is monotone because the tabulated values are.
class TabulatedCdf {
 public:
  TabulatedCdf(std::vector<double> grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.size() < 2 || grid_.size() != values_.size()) throw InputError("TabulatedCdf: bad grid");
  }

  /// CDF of `density` on [lo, hi] with `cells` equal cells; the density is
  /// treated as zero below lo.
  template <class F>
  static TabulatedCdf from_density(F&& density, double lo, double hi, int cells) {
    if (!(hi > lo) || cells < 1) throw ParameterError("TabulatedCdf: bad range");
    std::vector<double> g(static_cast<std::size_t>(cells + 1));
    std::vector<double> v(g.size(), 0.0);
    for (int i = 0; i <= cells; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / cells;
    for (int i = 0; i < cells; ++i) {
      const auto r = quadrature::integrate([&](double x, double, double) { return density(x); },
                                           g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(i + 1)], 1e-12);
      v[static_cast<std::size_t>(i + 1)] = v[static_cast<std::size_t>(i)] + std::max(r.value, 0.0);
    }
    return {std::move(g), std::move(v)};
  }

  [[nodiscard]] double operator()(double x) const {
    if (x <= grid_.front()) return values_.front();
    if (x >= grid_.back()) return values_.back();
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    const auto i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    const double w = (x - grid_[i]) / (grid_[i + 1] - grid_[i]);
    return values_[i] + w * (values_[i + 1] - values_[i]);
  }

  [[nodiscard]] double total() const { return values_.back(); }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
};

}  // namespace skewbeta
