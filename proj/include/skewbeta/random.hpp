#pragma once

// Seedable, splittable random streams and the distribution conventions used
// by every sampler in the library.
//
// Two chi conventions coexist:
//   chi-tilde_k : square root of a rate-1 Gamma(k/2) variable, density prop. to
//                 x^{k-1} e^{-x^2}.
//   chi_k       : the standard chi, density prop. to x^{k-1} e^{-x^2/2}.
// chi_k and sqrt(2) * chi-tilde_k have the same law.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "skewbeta/errors.hpp"

namespace skewbeta {

/// A deterministic random stream identified by a seed and an integer key path.
///
/// Streams are never shared: a stream is split into children with explicit
/// keys (replicate index, module id) so that replicates are independent of
/// the order in which they run.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::vector<std::uint64_t> key = {})
      : seed_(seed), key_(std::move(key)) {
    std::vector<std::uint32_t> words;
    words.reserve(2 * key_.size() + 3);
    words.push_back(static_cast<std::uint32_t>(seed_));
    words.push_back(static_cast<std::uint32_t>(seed_ >> 32));
    words.push_back(static_cast<std::uint32_t>(key_.size()));
    for (auto k : key_) {
      words.push_back(static_cast<std::uint32_t>(k));
      words.push_back(static_cast<std::uint32_t>(k >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
  }

  /// Child stream with `k` appended to the key path. Does not advance *this.
  [[nodiscard]] RandomStream split(std::uint64_t k) const {
    auto key = key_;
    key.push_back(k);
    return RandomStream(seed_, std::move(key));
  }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] const std::vector<std::uint64_t>& key() const { return key_; }

  /// Raw 64-bit draw.
  std::uint64_t next() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal draw.
  double standard_normal() { return normal_(engine_); }

 private:
  std::uint64_t seed_;
  std::vector<std::uint64_t> key_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Draw from the rate-1 gamma law u^{shape-1} e^{-u} / Gamma(shape).
///
/// Marsaglia-Tsang squeeze for shape >= 1; smaller shapes use
/// Gamma(a) = Gamma(a+1) * U^{1/a}, evaluated in log space.
inline double sample_gamma(double shape, RandomStream& rs) {
  if (!(shape > 0.0) || !std::isfinite(shape))
    throw ParameterError("sample_gamma: shape must be positive, got " + std::to_string(shape));
  if (shape < 1.0) {
    const double g = sample_gamma(shape + 1.0, rs);
    const double log_u = std::log(rs.uniform_open());
    const double x = std::exp(std::log(g) + log_u / shape);
    // Support is (0, inf); keep extreme underflow inside it.
    return x > 0.0 ? x : std::numeric_limits<double>::min();
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z = 0.0;
    double v = 0.0;
    do {
      z = rs.standard_normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rs.uniform_open();
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2) return d * v;
    if (std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

/// chi-tilde_k = sqrt(Gamma(k/2, 1)).
inline double sample_chi_tilde(double k, RandomStream& rs) {
  if (!(k > 0.0)) throw ParameterError("sample_chi_tilde: k must be positive");
  return std::sqrt(sample_gamma(0.5 * k, rs));
}

/// Standard chi with k degrees of freedom, sqrt(2 * Gamma(k/2, 1)).
inline double sample_standard_chi(double k, RandomStream& rs) {
  if (!(k > 0.0)) throw ParameterError("sample_standard_chi: k must be positive");
  return std::sqrt(2.0 * sample_gamma(0.5 * k, rs));
}

/// Normal draw with the given mean and variance.
inline double sample_normal(double mean, double variance, RandomStream& rs) {
  if (!(variance > 0.0)) throw ParameterError("sample_normal: variance must be positive");
  return mean + std::sqrt(variance) * rs.standard_normal();
}

/// Beta(r, s) as a ratio of gammas.
inline double sample_beta(double r, double s, RandomStream& rs) {
  if (!(r > 0.0) || !(s > 0.0)) throw ParameterError("sample_beta: parameters must be positive");
  const double x = sample_gamma(r, rs);
  const double y = sample_gamma(s, rs);
  return x / (x + y);
}

/// Dirichlet(s_1, ..., s_m): normalized independent gammas.
inline std::vector<double> sample_dirichlet(std::span<const double> s, RandomStream& rs) {
  if (s.empty()) throw ParameterError("sample_dirichlet: empty parameter vector");
  std::vector<double> out(s.size());
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i] > 0.0)) throw ParameterError("sample_dirichlet: parameters must be positive");
    out[i] = sample_gamma(s[i], rs);
    total += out[i];
  }
  for (auto& v : out) v /= total;
  return out;
}

}  // namespace skewbeta
