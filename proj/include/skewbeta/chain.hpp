#pragma once

// The inductive construction: bordering A_n by a random column (step up), the
// random corank-1 projection (step down), and the random rational functions
// whose roots give the new eigenvalues.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "skewbeta/errors.hpp"
#include "skewbeta/random.hpp"
#include "skewbeta/spectral.hpp"

namespace skewbeta {

/// R(x) = constant - sum_i c_i / (x - a_i), constant in {0, 1}, poles strictly
/// decreasing, weights positive. With constant = 1 there is one root above a_1
/// and one in each gap; with constant = 0 there is one root in each gap.
struct RandomRational {
  bool constant = true;
  std::vector<double> poles;
  std::vector<double> weights;

  void validate() const {
    if (poles.empty() || poles.size() != weights.size())
      throw InputError("RandomRational: poles and weights must be nonempty and of equal length");
    for (std::size_t i = 0; i < poles.size(); ++i) {
      if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) throw InputError("RandomRational: weights must be positive");
      if (!std::isfinite(poles[i])) throw InputError("RandomRational: poles must be finite");
      if (i > 0 && !(poles[i] < poles[i - 1])) throw InputError("RandomRational: poles must be strictly decreasing");
    }
  }

  [[nodiscard]] double operator()(double x) const {
    double s = constant ? 1.0 : 0.0;
    for (std::size_t i = 0; i < poles.size(); ++i) s -= weights[i] / (x - poles[i]);
    return s;
  }

  /// Bound on |R(root)| for a computed root: 1e-12 (1 + sum c/|x - a|) plus the
  /// change of R over a few rounding units of x, which dominates near a pole.
  [[nodiscard]] double residual_tolerance(double x) const {
    double first = 0.0;
    double second = 0.0;
    for (std::size_t i = 0; i < poles.size(); ++i) {
      const double d = std::abs(x - poles[i]);
      first += weights[i] / d;
      second += weights[i] / (d * d);
    }
    return 1e-12 * (1.0 + first) + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x) * second;
  }
};

namespace detail {

// Root of the increasing function r on (lo, hi) with r(lo+) < 0 < r(hi-),
// bisected until the bracket can no longer shrink.
inline double bisect_increasing(const RandomRational& r, double lo, double hi) {
  for (int it = 0; it < 2200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (r(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double flo = std::abs(r(lo));
  const double fhi = std::abs(r(hi));
  return flo <= fhi ? lo : hi;
}

}  // namespace detail

/// Roots of R in decreasing order. R - constant is increasing between poles
/// (-sum c/(x-a) has positive derivative), so each bracket holds one root.
inline std::vector<double> rational_roots(const RandomRational& r) {
  r.validate();
  const auto& a = r.poles;
  std::vector<double> roots;
  if (r.constant) {
    double total = 0.0;
    for (double c : r.weights) total += c;
    // At a_1 + sum c every term is at most c_i / sum c, so R >= 0 there.
    double hi = a[0] + total;
    while (!(r(hi) >= 0.0)) hi = a[0] + 2.0 * (hi - a[0]);
    roots.push_back(detail::bisect_increasing(r, a[0], hi));
  }
  for (std::size_t i = 0; i + 1 < a.size(); ++i) roots.push_back(detail::bisect_increasing(r, a[i + 1], a[i]));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double x = roots[i];
    const bool above_pole = r.constant ? x > a[i] : x > a[i + 1];
    const bool below_pole = r.constant ? (i == 0 || x < a[i - 1]) : x < a[i];
    if (!above_pole || !below_pole) throw ConditioningError("rational_roots: root left its bracket");
  }
  return roots;
}

/// Weights of one bordering step: 2 w_i^2 for each +-lambda_i pair and, when
/// n is odd, b^2 for the zero eigenvalue (listed last).
inline std::vector<double> sample_border_weights(int n, double beta, RandomStream& rs) {
  std::vector<double> w;
  for (int i = 0; i < n / 2; ++i) w.push_back(sample_gamma(beta / 2.0, rs));
  if (n % 2 == 1) w.push_back(sample_gamma(beta / 4.0, rs));
  return w;
}

/// Positive eigenvalues of A_{n+1} from those of A_n and given bordering weights,
/// as square roots of the roots in y = x^2 of
///   1 - sum 2 w_i^2 / (y - lambda_i^2) [- b^2 / y   (n odd)].
inline std::vector<double> chain_step_up_with(std::span<const double> lambda_prev, int n,
                                              std::span<const double> weights) {
  if (n < 1) throw SizeError("chain_step_up: n must be at least 1");
  if (lambda_prev.size() != static_cast<std::size_t>(n / 2) ||
      weights.size() != static_cast<std::size_t>((n + 1) / 2))
    throw InputError("chain_step_up: wrong input lengths");
  RandomRational r;
  r.constant = true;
  for (double l : lambda_prev) r.poles.push_back(l * l);
  if (n % 2 == 1) r.poles.push_back(0.0);
  r.weights.assign(weights.begin(), weights.end());
  auto roots = rational_roots(r);
  for (auto& y : roots) y = std::sqrt(y);
  return roots;
}

inline std::vector<double> chain_step_up(std::span<const double> lambda_prev, int n, double beta, RandomStream& rs) {
  if (!(beta > 0.0)) throw ParameterError("chain_step_up: beta must be positive");
  const auto w = sample_border_weights(n, beta, rs);
  return chain_step_up_with(lambda_prev, n, w);
}

/// Positive eigenvalues of A_n built by bordering from A_1 = 0.
inline std::vector<double> chain_sample(int n, double beta, RandomStream& rs) {
  if (n < 2) throw SizeError("chain_sample: n must be at least 2");
  if (!(beta > 0.0)) throw ParameterError("chain_sample: beta must be positive");
  std::vector<double> lambda;
  for (int m = 1; m < n; ++m) lambda = chain_step_up(lambda, m, beta, rs);
  return lambda;
}

/// Dirichlet parameters of the squared first components (2 q_i^2 [, z^2]) of an
/// order-m matrix: beta/2 per pair and beta/4 for the zero eigenvalue.
inline std::vector<double> first_component_dirichlet_parameters(int m, double beta) {
  std::vector<double> s(static_cast<std::size_t>(m / 2), beta / 2.0);
  if (m % 2 == 1) s.push_back(beta / 4.0);
  return s;
}

/// Result of one projection step: the new eigenvalues and the weights used.
struct StepDown {
  std::vector<double> lambda;
  std::vector<double> weights;  // (2 q_i^2 [, c^2]), a point of the simplex
};

/// Positive eigenvalues of A_n from those of A_{n+1} and given simplex weights,
/// as square roots of the roots in y of sum 2 q_i^2 / (y - lambda_i^2) [+ c^2 / y].
inline std::vector<double> step_down_with(std::span<const double> lambda, int n, std::span<const double> weights) {
  if (n < 1) throw SizeError("step_down: n must be at least 1");
  const int m = n + 1;
  if (lambda.size() != static_cast<std::size_t>(m / 2) || weights.size() != static_cast<std::size_t>((m + 1) / 2))
    throw InputError("step_down: wrong input lengths");
  RandomRational r;
  r.constant = false;
  for (double l : lambda) r.poles.push_back(l * l);
  if (m % 2 == 1) r.poles.push_back(0.0);
  r.weights.assign(weights.begin(), weights.end());
  auto roots = rational_roots(r);
  for (auto& y : roots) y = std::sqrt(y);
  return roots;
}

inline StepDown step_down(std::span<const double> lambda, int n, double beta, RandomStream& rs) {
  if (!(beta > 0.0)) throw ParameterError("step_down: beta must be positive");
  const auto s = first_component_dirichlet_parameters(n + 1, beta);
  StepDown out;
  out.weights = sample_dirichlet(s, rs);
  out.lambda = step_down_with(lambda, n, out.weights);
  return out;
}

/// Spectral data of an order-n matrix with eigenvalues from the chain and
/// first components from the Dirichlet law of the projection step.
inline SpectralData chain_spectral_sample(int n, double beta, RandomStream& rs) {
  SpectralData sd;
  sd.n = n;
  sd.lambda = chain_sample(n, beta, rs);
  const auto w = sample_dirichlet(first_component_dirichlet_parameters(n, beta), rs);
  for (int i = 0; i < n / 2; ++i) sd.q.push_back(std::sqrt(w[static_cast<std::size_t>(i)] / 2.0));
  if (n % 2 == 1) sd.z = std::sqrt(w.back());
  return sd;
}

/// The bordered matrix A_{n+1} conjugated by diag(1, ..., 1, i): a real
/// symmetric arrowhead with diagonal (lambda_1, -lambda_1, ..., [0], 0) and last
/// column (w_1, w_1, ..., [b], 0), where weights hold 2 w_i^2 [, b^2].
inline Eigen::MatrixXd arrowhead_matrix(std::span<const double> lambda_prev, int n, std::span<const double> weights) {
  if (lambda_prev.size() != static_cast<std::size_t>(n / 2) ||
      weights.size() != static_cast<std::size_t>((n + 1) / 2))
    throw InputError("arrowhead_matrix: wrong input lengths");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i < n / 2; ++i) {
    const double l = lambda_prev[static_cast<std::size_t>(i)];
    const double w = std::sqrt(weights[static_cast<std::size_t>(i)] / 2.0);
    a(2 * i, 2 * i) = l;
    a(2 * i + 1, 2 * i + 1) = -l;
    a(2 * i, n) = a(n, 2 * i) = w;
    a(2 * i + 1, n) = a(n, 2 * i + 1) = w;
  }
  if (n % 2 == 1) a(n - 1, n) = a(n, n - 1) = std::sqrt(weights.back());
  return a;
}

/// Max deviation between the positive eigenvalues of the arrowhead matrix
/// (dense symmetric solver) and the roots found by chain_step_up_with,
/// relative to the largest eigenvalue.
inline double border_matrix_check(std::span<const double> lambda_prev, int n, std::span<const double> weights) {
  const auto roots = chain_step_up_with(lambda_prev, n, weights);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(arrowhead_matrix(lambda_prev, n, weights),
                                                    Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();  // ascending
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  double worst = 0.0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    worst = std::max(worst, std::abs(roots[i] - ev(n - static_cast<Eigen::Index>(i))) / scale);
  return worst;
}

}  // namespace skewbeta
