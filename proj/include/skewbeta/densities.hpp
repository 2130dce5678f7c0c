#pragma once

// Log-densities and normalization constants: the positive-eigenvalue law of
// the anti-symmetric beta model, the beta-Laguerre law, the conditional laws
// of the bordering and projection steps, Dirichlet, and the Dixon-Anderson
// integral.

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "skewbeta/errors.hpp"
#include "skewbeta/quadrature.hpp"

namespace skewbeta {

/// A log-density value. Points outside the support carry in_support = false
/// and log_value = -inf; evaluation never throws for them.
struct LogDensityValue {
  double log_value = -std::numeric_limits<double>::infinity();
  bool in_support = false;

  static LogDensityValue outside() { return {}; }
  static LogDensityValue at(double v) { return {v, true}; }
  [[nodiscard]] double density() const { return in_support ? std::exp(log_value) : 0.0; }
};

namespace detail {

inline void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be positive");
}

// True iff v is strictly decreasing and every entry is positive and finite.
inline bool strictly_decreasing_positive(std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) return false;
    if (i > 0 && !(v[i] < v[i - 1])) return false;
  }
  return true;
}

inline double log_abs_diff_sq(double x, double y) { return std::log(std::abs(x - y)) + std::log(x + y); }

}  // namespace detail

/// log C_{beta,n}:
///   n even: sum_{j=1}^{n/2} [lgamma(j beta/2) + lgamma((2j-1) beta/4) - log 2 - lgamma(beta/2)]
///   n odd:  lgamma(n beta/4) - lgamma(beta/4) + log C_{beta,n-1}.
inline double log_normalization_C(int n, double beta) {
  detail::require_beta(beta);
  if (n < 2) throw SizeError("log_normalization_C: n must be at least 2");
  const int m = n / 2;
  double s = 0.0;
  for (int j = 1; j <= m; ++j)
    s += std::lgamma(j * beta / 2.0) + std::lgamma((2 * j - 1) * beta / 4.0) - std::numbers::ln2 -
         std::lgamma(beta / 2.0);
  if (n % 2 == 1) s += std::lgamma(n * beta / 4.0) - std::lgamma(beta / 4.0);
  return s;
}

/// log of the Selberg-type integral
///   W_{a,beta,m} = int_{(0,inf)^m} prod x_i^a e^{-x_i} prod_{j<k} |x_k - x_j|^beta dx
///                = prod_{j=0}^{m-1} Gamma(1 + (j+1) beta/2) Gamma(a + 1 + j beta/2) / Gamma(1 + beta/2).
inline double log_selberg_W(double a, double beta, int m) {
  detail::require_beta(beta);
  if (!(a > -1.0)) throw ParameterError("log_selberg_W: a must exceed -1");
  if (m < 1) throw SizeError("log_selberg_W: m must be at least 1");
  double s = 0.0;
  for (int j = 0; j < m; ++j)
    s += std::lgamma(1.0 + (j + 1) * beta / 2.0) + std::lgamma(a + 1.0 + j * beta / 2.0) - std::lgamma(1.0 + beta / 2.0);
  return s;
}

/// Residuals of C_{beta,2m} 2^m m! = W_{beta/4-1,beta,m} and
/// C_{beta,2m+1} 2^m m! = W_{3beta/4-1,beta,m}, in log space.
struct SelbergResidual {
  double even = 0.0;
  double odd = 0.0;
};

inline SelbergResidual selberg_consistency_check(double beta, int m) {
  const double log_fact = m * std::numbers::ln2 + std::lgamma(m + 1.0);
  return {std::abs(log_normalization_C(2 * m, beta) + log_fact - log_selberg_W(beta / 4.0 - 1.0, beta, m)),
          std::abs(log_normalization_C(2 * m + 1, beta) + log_fact - log_selberg_W(3.0 * beta / 4.0 - 1.0, beta, m))};
}

/// Memo of log C and log W values, safe for concurrent use.
class NormalizationTable {
 public:
  double log_C(int n, double beta) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, beta);
    auto it = c_.find(key);
    if (it == c_.end()) it = c_.emplace(key, log_normalization_C(n, beta)).first;
    return it->second;
  }

  double log_W(double a, double beta, int m) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(a, beta, m);
    auto it = w_.find(key);
    if (it == w_.end()) it = w_.emplace(key, log_selberg_W(a, beta, m)).first;
    return it->second;
  }

  /// Residual of the step recurrence linking C_{beta,n} and C_{beta,n+1}:
  ///   n odd:  C_n / (2 C_{n+1}) * Gamma(beta/4) Gamma((n+1) beta/4) / Gamma(beta/2) = 1,
  ///   n even: C_n / C_{n+1} * Gamma((n+1) beta/4) / Gamma(beta/4) = 1.
  double recurrence_residual(int n, double beta) {
    const double ratio = log_C(n, beta) - log_C(n + 1, beta);
    double lhs = 0.0;
    if (n % 2 == 1)
      lhs = ratio - std::numbers::ln2 + std::lgamma(beta / 4.0) + std::lgamma((n + 1) * beta / 4.0) -
            std::lgamma(beta / 2.0);
    else
      lhs = ratio + std::lgamma((n + 1) * beta / 4.0) - std::lgamma(beta / 4.0);
    return std::abs(lhs);
  }

  static NormalizationTable& global() {
    static NormalizationTable table;
    return table;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, double>, double> c_;
  std::map<std::tuple<double, double, int>, double> w_;
};

/// Joint density of the positive eigenvalues of the n x n model, on the chamber
/// lambda_1 > ... > lambda_{floor(n/2)} > 0:
///
///   (1/C_{beta,n}) prod lambda_i^e e^{-lambda_i^2} prod_{j<k} |lambda_j^2 - lambda_k^2|^beta,
///
/// with e = beta/2 - 1 for n even and 3 beta/2 - 1 for n odd.
inline LogDensityValue logpdf_positive_eigenvalues(std::span<const double> lambda, int n, double beta) {
  detail::require_beta(beta);
  if (n < 2) throw SizeError("logpdf_positive_eigenvalues: n must be at least 2");
  if (lambda.size() != static_cast<std::size_t>(n / 2)) throw InputError("logpdf_positive_eigenvalues: expected floor(n/2) values");
  if (!detail::strictly_decreasing_positive(lambda)) return LogDensityValue::outside();
  const double e = n % 2 == 0 ? beta / 2.0 - 1.0 : 1.5 * beta - 1.0;
  double s = -NormalizationTable::global().log_C(n, beta);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    s += e * std::log(lambda[i]) - lambda[i] * lambda[i];
    for (std::size_t j = i + 1; j < lambda.size(); ++j) s += beta * detail::log_abs_diff_sq(lambda[i], lambda[j]);
  }
  return LogDensityValue::at(s);
}

/// log c_L^{beta,a} = -n a log 2 + sum_{j=1}^n [lgamma(beta/2) - lgamma(beta j/2) - lgamma(a - beta (n-j)/2)].
inline double log_laguerre_constant(int n, double a, double beta) {
  detail::require_beta(beta);
  if (n < 1) throw SizeError("log_laguerre_constant: n must be at least 1");
  if (!(2.0 * a - (n - 1) * beta > 0.0)) throw ParameterError("laguerre: requires 2a - (n-1) beta > 0");
  double s = -n * a * std::numbers::ln2;
  for (int j = 1; j <= n; ++j)
    s += std::lgamma(beta / 2.0) - std::lgamma(beta * j / 2.0) - std::lgamma(a - beta * (n - j) / 2.0);
  return s;
}

/// Joint density of the eigenvalues lambda_1 > ... > lambda_n > 0 of B B^T for the
/// chi bidiagonal B_{beta,n,a}:
///   c_L prod_{i<j} (lambda_i - lambda_j)^beta prod lambda_i^{a - (n-1) beta/2 - 1} e^{-sum lambda_i / 2}.
inline LogDensityValue logpdf_laguerre(std::span<const double> lambda, int n, double a, double beta) {
  const double log_c = log_laguerre_constant(n, a, beta);
  if (lambda.size() != static_cast<std::size_t>(n)) throw InputError("logpdf_laguerre: expected n values");
  if (!detail::strictly_decreasing_positive(lambda)) return LogDensityValue::outside();
  const double e = a - (n - 1) * beta / 2.0 - 1.0;
  double s = log_c;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    s += e * std::log(lambda[i]) - lambda[i] / 2.0;
    for (std::size_t j = i + 1; j < lambda.size(); ++j) s += beta * std::log(lambda[i] - lambda[j]);
  }
  return LogDensityValue::at(s);
}

/// Joint density of the singular values sigma_1 > ... > sigma_n > 0 of B_{beta,n,a}:
///   2^n c_L prod_{i<j} (sigma_i^2 - sigma_j^2)^beta prod sigma_i^{2a - (n-1) beta - 1} e^{-sum sigma_i^2 / 2}.
inline LogDensityValue logpdf_singular_values(std::span<const double> sigma, int n, double a, double beta) {
  const double log_c = log_laguerre_constant(n, a, beta);
  if (sigma.size() != static_cast<std::size_t>(n)) throw InputError("logpdf_singular_values: expected n values");
  if (!detail::strictly_decreasing_positive(sigma)) return LogDensityValue::outside();
  const double e = 2.0 * a - (n - 1) * beta - 1.0;
  double s = n * std::numbers::ln2 + log_c;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    s += e * std::log(sigma[i]) - sigma[i] * sigma[i] / 2.0;
    for (std::size_t j = i + 1; j < sigma.size(); ++j) s += beta * detail::log_abs_diff_sq(sigma[i], sigma[j]);
  }
  return LogDensityValue::at(s);
}

/// Density of the positive eigenvalues x of A_{n+1} given the positive
/// eigenvalues lambda of A_n in the bordering construction.
///
/// n even: x_1 > lambda_1 > x_2 > ... > x_{n/2} > lambda_{n/2},
///   2^{n/2} prod x_j e^{-sum (x_j^2 - lambda_j^2)} / Gamma(beta/2)^{n/2}
///   * prod_{i<j} (x_i^2 - x_j^2) / (lambda_i^2 - lambda_j^2)^{beta-1} * prod_{i,j} |x_i^2 - lambda_j^2|^{beta/2-1}.
///
/// n odd: x_1 > lambda_1 > ... > lambda_{(n-1)/2} > x_{(n+1)/2} > 0,
///   2^{(n+1)/2} e^{-x_last^2 - sum (x_j^2 - lambda_j^2)} / (Gamma(beta/2)^{(n-1)/2} Gamma(beta/4))
///   * prod x_i^{beta/2-1} / prod (lambda_i^2)^{3beta/4-1}
///   * prod_{i<j} (x_i^2 - x_j^2) / prod_{i<j} (lambda_i^2 - lambda_j^2)^{beta-1} * prod_{i,j} |x_i^2 - lambda_j^2|^{beta/2-1}.
inline LogDensityValue conditional_logpdf_up(std::span<const double> x, std::span<const double> lambda, int n,
                                             double beta) {
  detail::require_beta(beta);
  if (n < 1) throw SizeError("conditional_logpdf_up: n must be at least 1");
  const std::size_t k = static_cast<std::size_t>(n / 2);
  const std::size_t kx = static_cast<std::size_t>((n + 1) / 2);
  if (lambda.size() != k || x.size() != kx) throw InputError("conditional_logpdf_up: wrong lengths");
  if (!detail::strictly_decreasing_positive(lambda) || !detail::strictly_decreasing_positive(x))
    return LogDensityValue::outside();
  for (std::size_t i = 0; i < k; ++i) {
    if (!(x[i] > lambda[i])) return LogDensityValue::outside();
    if (i + 1 < kx && !(lambda[i] > x[i + 1])) return LogDensityValue::outside();
  }

  double s = kx * std::numbers::ln2;
  if (n % 2 == 0) {
    s -= k * std::lgamma(beta / 2.0);
    for (std::size_t j = 0; j < k; ++j) s += std::log(x[j]) - (x[j] * x[j] - lambda[j] * lambda[j]);
  } else {
    s -= k * std::lgamma(beta / 2.0) + std::lgamma(beta / 4.0);
    s -= x[kx - 1] * x[kx - 1];
    for (std::size_t j = 0; j < k; ++j) s -= x[j] * x[j] - lambda[j] * lambda[j];
    for (std::size_t i = 0; i < kx; ++i) s += (beta / 2.0 - 1.0) * std::log(x[i]);
    for (std::size_t i = 0; i < k; ++i) s -= (0.75 * beta - 1.0) * 2.0 * std::log(lambda[i]);
  }
  for (std::size_t i = 0; i < kx; ++i)
    for (std::size_t j = i + 1; j < kx; ++j) s += detail::log_abs_diff_sq(x[i], x[j]);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) s -= (beta - 1.0) * detail::log_abs_diff_sq(lambda[i], lambda[j]);
  for (std::size_t i = 0; i < kx; ++i)
    for (std::size_t j = 0; j < k; ++j) s += (beta / 2.0 - 1.0) * detail::log_abs_diff_sq(x[i], lambda[j]);
  return LogDensityValue::at(s);
}

/// Density of the positive eigenvalues x of A_n given the positive eigenvalues
/// lambda of A_{n+1}, for the corank-1 projection with Dirichlet weights.
///
/// n even (n+1 odd): lambda_1 > x_1 > lambda_2 > ... > lambda_{n/2} > x_{n/2} > 0,
///   2^{n/2} Gamma((n+1) beta/4) / (Gamma(beta/2)^{n/2} Gamma(beta/4))
///   * prod x_i^{beta/2-1} / lambda_i^{2(3beta/4-1)}
///   * prod_{i<j} (x_i^2 - x_j^2) / (lambda_i^2 - lambda_j^2)^{beta-1} * prod_{i,j} |x_i^2 - lambda_j^2|^{beta/2-1}.
///
/// n odd (n+1 even): lambda_1 > x_1 > lambda_2 > ... > x_{(n-1)/2} > lambda_{(n+1)/2} > 0,
///   2^{(n-1)/2} Gamma((n+1) beta/4) / Gamma(beta/2)^{(n+1)/2} * prod x_i
///   * prod_{i<j} (x_i^2 - x_j^2) / prod_{i<j} (lambda_i^2 - lambda_j^2)^{beta-1}
///   * prod_{i,j} |x_i^2 - lambda_j^2|^{beta/2-1}.
inline LogDensityValue conditional_logpdf_down(std::span<const double> x, std::span<const double> lambda, int n,
                                               double beta) {
  detail::require_beta(beta);
  if (n < 1) throw SizeError("conditional_logpdf_down: n must be at least 1");
  const std::size_t kl = static_cast<std::size_t>((n + 1) / 2);
  const std::size_t kx = static_cast<std::size_t>(n / 2);
  if (lambda.size() != kl || x.size() != kx) throw InputError("conditional_logpdf_down: wrong lengths");
  if (!detail::strictly_decreasing_positive(lambda) || !detail::strictly_decreasing_positive(x))
    return LogDensityValue::outside();
  for (std::size_t i = 0; i < kx; ++i)
    if (!(lambda[i] > x[i]) || (i + 1 < kl && !(x[i] > lambda[i + 1]))) return LogDensityValue::outside();

  double s = kx * std::numbers::ln2 + std::lgamma((n + 1) * beta / 4.0);
  if (n % 2 == 0) {
    s -= kx * std::lgamma(beta / 2.0) + std::lgamma(beta / 4.0);
    for (std::size_t i = 0; i < kx; ++i)
      s += (beta / 2.0 - 1.0) * std::log(x[i]) - 2.0 * (0.75 * beta - 1.0) * std::log(lambda[i]);
  } else {
    s -= kl * std::lgamma(beta / 2.0);
    for (std::size_t i = 0; i < kx; ++i) s += std::log(x[i]);
  }
  for (std::size_t i = 0; i < kx; ++i)
    for (std::size_t j = i + 1; j < kx; ++j) s += detail::log_abs_diff_sq(x[i], x[j]);
  for (std::size_t i = 0; i < kl; ++i)
    for (std::size_t j = i + 1; j < kl; ++j) s -= (beta - 1.0) * detail::log_abs_diff_sq(lambda[i], lambda[j]);
  for (std::size_t i = 0; i < kx; ++i)
    for (std::size_t j = 0; j < kl; ++j) s += (beta / 2.0 - 1.0) * detail::log_abs_diff_sq(x[i], lambda[j]);
  return LogDensityValue::at(s);
}

/// Dirichlet D[s] log-density at a point x of the open simplex (all x_i > 0,
/// sum x_i = 1 within 1e-12).
inline LogDensityValue dirichlet_logpdf(std::span<const double> x, std::span<const double> s) {
  if (s.size() < 2 || x.size() != s.size()) throw InputError("dirichlet_logpdf: x and s must have equal length >= 2");
  double total_s = 0.0;
  for (double v : s) {
    if (!(v > 0.0)) throw ParameterError("dirichlet_logpdf: parameters must be positive");
    total_s += v;
  }
  double total_x = 0.0;
  for (double v : x) {
    if (!(v > 0.0) || !(v < 1.0)) return LogDensityValue::outside();
    total_x += v;
  }
  if (!(std::abs(total_x - 1.0) <= 1e-12)) return LogDensityValue::outside();
  double r = std::lgamma(total_s);
  for (std::size_t i = 0; i < s.size(); ++i) r += (s[i] - 1.0) * std::log(x[i]) - std::lgamma(s[i]);
  return LogDensityValue::at(r);
}

/// Both sides of the Dixon-Anderson integral over a_1 > lambda_1 > a_2 > ... > lambda_m > a_{m+1}:
///
///   int prod_{j<k} (lambda_j - lambda_k) prod_{j,p} |lambda_j - a_p|^{s_p - 1} dlambda
///     = prod Gamma(s_i) / Gamma(sum s_i) * prod_{j<k} (a_j - a_k)^{s_j + s_k - 1}.
struct DixonAndersonResult {
  double lhs = 0.0;
  double rhs = 0.0;
  [[nodiscard]] double relative_error() const { return std::abs(lhs - rhs) / std::abs(rhs); }
};

inline DixonAndersonResult dixon_anderson_check(std::span<const double> a, std::span<const double> s,
                                                double tol = 1e-13) {
  if (a.size() != s.size() || a.size() < 2 || a.size() > 3)
    throw InputError("dixon_anderson_check: need m+1 poles and exponents with m in {1, 2}");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i] > 0.0)) throw ParameterError("dixon_anderson_check: exponents must be positive");
    if (i > 0 && !(a[i] < a[i - 1])) throw InputError("dixon_anderson_check: poles must be strictly decreasing");
  }
  DixonAndersonResult r;
  double log_rhs = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    log_rhs += std::lgamma(s[i]);
    total += s[i];
    for (std::size_t j = i + 1; j < s.size(); ++j) log_rhs += (s[i] + s[j] - 1.0) * std::log(a[i] - a[j]);
  }
  r.rhs = std::exp(log_rhs - std::lgamma(total));

  auto pw = [](double d, double e) { return std::pow(d, e - 1.0); };
  constexpr double kRelAccuracy = 1e-9;
  if (a.size() == 2) {
    const auto q = quadrature::integrate(
        [&](double, double d_lo, double d_hi) { return pw(d_hi, s[0]) * pw(d_lo, s[1]); }, a[1], a[0], tol);
    r.lhs = quadrature::require_converged(q, kRelAccuracy, "dixon_anderson_check").value;
    return r;
  }
  // lambda_1 in (a_2, a_1), lambda_2 in (a_3, a_2); every factor is written
  // through endpoint distances.
  const double g12 = a[0] - a[1];
  const double g23 = a[1] - a[2];
  bool converged = true;
  const auto outer = quadrature::integrate(
      [&](double, double d1_lo, double d1_hi) {
        const auto inner = quadrature::integrate(
            [&](double, double d2_lo, double d2_hi) {
              return (d1_lo + d2_hi) * pw(d2_hi + g12, s[0]) * pw(d2_hi, s[1]) * pw(d2_lo, s[2]);
            },
            a[2], a[1], tol);
        if (!(inner.error <= kRelAccuracy * inner.l1)) converged = false;
        return inner.value * pw(d1_hi, s[0]) * pw(d1_lo, s[1]) * pw(d1_lo + g23, s[2]);
      },
      a[1], a[0], tol);
  if (!converged) throw AccuracyError("dixon_anderson_check: inner quadrature did not converge");
  r.lhs = quadrature::require_converged(outer, kRelAccuracy, "dixon_anderson_check").value;
  return r;
}

/// Total mass of the positive-eigenvalue density of the n x n model, n in 2..5,
/// by one- or two-dimensional quadrature over the ordered chamber.
inline double positive_eigenvalue_total_mass(int n, double beta, double tol = 1e-12) {
  detail::require_beta(beta);
  if (n < 2 || n > 5) throw SizeError("positive_eigenvalue_total_mass: supported for n in 2..5");
  const double log_c = log_normalization_C(n, beta);
  const double e = n % 2 == 0 ? beta / 2.0 - 1.0 : 1.5 * beta - 1.0;
  if (n <= 3) {
    const auto r = quadrature::integrate_to_infinity(
        [&](double x, double) { return std::exp(e * std::log(x) - x * x - log_c); }, 0.0, tol);
    return r.value;
  }
  // lambda_2 = t lambda_1 with t in (0, 1); d lambda_2 = lambda_1 dt.
  const auto r = quadrature::integrate_to_infinity(
      [&](double l1, double) {
        if (l1 == 0.0) return 0.0;
        const auto inner = quadrature::integrate(
            [&](double t, double, double d_hi) {
              const double l2 = t * l1;
              return std::exp(e * (std::log(l1) + std::log(l2)) - l1 * l1 - l2 * l2 +
                              beta * (2.0 * std::log(l1) + std::log(d_hi) + std::log1p(t)) + std::log(l1) - log_c);
            },
            0.0, 1.0, tol);
        return inner.value;
      },
      0.0, tol);
  return r.value;
}

}  // namespace skewbeta
