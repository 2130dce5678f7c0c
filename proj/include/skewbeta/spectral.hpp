#pragma once

// Characteristic polynomials of the reduced tridiagonal model, the map
// T -> (lambda, q[, z]) to positive eigenvalues and first eigenvector
// components, and its inverse.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "skewbeta/ensembles.hpp"
#include "skewbeta/errors.hpp"
#include "skewbeta/random.hpp"

namespace skewbeta {

/// Values P_0(x), ..., P_n(x) of the characteristic polynomials of the trailing
/// principal m x m blocks of iT (equivalently of T_s), generated by
///
///     P_0 = 1,  P_1 = x,  P_{m+1} = x P_m - b_m^2 P_{m-1}.
///
/// Each value is stored as mantissa * 2^exponent so that the sequence never
/// overflows; consecutive pairs are rescaled together, which keeps their ratio
/// exact.
struct CharPolySequence {
  double x = 0.0;
  std::vector<double> mantissa;
  std::vector<long> exponent;

  [[nodiscard]] int size() const { return static_cast<int>(mantissa.size()) - 1; }

  /// P_m(x); may overflow to +-inf for very large arguments.
  [[nodiscard]] double value(int m) const {
    return std::ldexp(mantissa[static_cast<std::size_t>(m)], static_cast<int>(exponent[static_cast<std::size_t>(m)]));
  }

  [[nodiscard]] int sign(int m) const {
    const double v = mantissa[static_cast<std::size_t>(m)];
    return (v > 0.0) - (v < 0.0);
  }

  /// log |P_m(x)|, -inf at an exact zero.
  [[nodiscard]] double log_abs(int m) const {
    const double v = mantissa[static_cast<std::size_t>(m)];
    if (v == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(v)) + static_cast<double>(exponent[static_cast<std::size_t>(m)]) * std::log(2.0);
  }

  /// P_m(x) / P_k(x) without forming either value.
  [[nodiscard]] double ratio(int m, int k) const {
    const auto um = static_cast<std::size_t>(m);
    const auto uk = static_cast<std::size_t>(k);
    const double q = mantissa[um] / mantissa[uk];
    return std::ldexp(q, static_cast<int>(exponent[um] - exponent[uk]));
  }
};

inline CharPolySequence charpoly_sequence(const AntisymTridiagonal& t, double x) {
  const int n = t.order();
  CharPolySequence s;
  s.x = x;
  s.mantissa.resize(static_cast<std::size_t>(n + 1));
  s.exponent.assign(static_cast<std::size_t>(n + 1), 0);
  s.mantissa[0] = 1.0;
  s.mantissa[1] = x;
  double prev = 1.0;
  double cur = x;
  long scale = 0;
  for (int m = 1; m < n; ++m) {
    const double bm = t.b(m);
    const double next = x * cur - bm * bm * prev;
    prev = cur;
    cur = next;
    if (cur != 0.0 && (std::abs(cur) > 0x1.0p+400 || std::abs(cur) < 0x1.0p-400)) {
      const int e = std::ilogb(cur);
      cur = std::ldexp(cur, -e);
      prev = std::ldexp(prev, -e);
      scale += e;
    }
    s.mantissa[static_cast<std::size_t>(m + 1)] = cur;
    s.exponent[static_cast<std::size_t>(m + 1)] = scale;
  }
  return s;
}

/// Positive eigenvalues and first eigenvector components of iT.
///
/// lambda is strictly decreasing, q > 0, and z (present iff n is odd) is the
/// first component of the null vector; 2 sum q^2 + z^2 = 1.
struct SpectralData {
  int n = 0;
  std::vector<double> lambda;
  std::vector<double> q;
  std::optional<double> z;

  [[nodiscard]] int half() const { return n / 2; }

  [[nodiscard]] double normalization() const {
    double s = 0.0;
    for (double v : q) s += 2.0 * v * v;
    if (z) s += *z * *z;
    return s;
  }

  /// Throws InputError when the invariants fail; `tol` bounds |normalization - 1|.
  void validate(double tol = 1e-9) const {
    if (n < 2) throw InputError("SpectralData: n must be at least 2");
    const auto k = static_cast<std::size_t>(half());
    if (lambda.size() != k || q.size() != k) throw InputError("SpectralData: lambda and q must have length floor(n/2)");
    if (z.has_value() != (n % 2 == 1)) throw InputError("SpectralData: z is present iff n is odd");
    for (std::size_t i = 0; i < k; ++i) {
      if (!(lambda[i] > 0.0) || !(q[i] > 0.0)) throw InputError("SpectralData: lambda and q must be positive");
      if (i > 0 && !(lambda[i] < lambda[i - 1])) throw InputError("SpectralData: lambda must be strictly decreasing");
    }
    if (z && !(*z > 0.0)) throw InputError("SpectralData: z must be positive");
    if (!(std::abs(normalization() - 1.0) <= tol)) throw InputError("SpectralData: first components are not normalized");
  }
};

/// Full eigenvalue list (lambda, -lambda[, 0]) and matching weights
/// (q^2, q^2[, z^2]) of the symmetric realization.
struct ExpandedSpectrum {
  std::vector<double> eigenvalues;
  std::vector<double> weights;
};

inline ExpandedSpectrum expand_spectrum(const SpectralData& sd) {
  ExpandedSpectrum e;
  for (std::size_t i = 0; i < sd.lambda.size(); ++i) {
    e.eigenvalues.push_back(sd.lambda[i]);
    e.weights.push_back(sd.q[i] * sd.q[i]);
  }
  for (std::size_t i = 0; i < sd.lambda.size(); ++i) {
    e.eigenvalues.push_back(-sd.lambda[i]);
    e.weights.push_back(sd.q[i] * sd.q[i]);
  }
  if (sd.z) {
    e.eigenvalues.push_back(0.0);
    e.weights.push_back(*sd.z * *sd.z);
  }
  return e;
}

namespace detail {

// Number of eigenvalues of T_s strictly below mu, from the signs of the LDL^T
// pivots of T_s - mu I (zero diagonal, off-diagonals b).
inline int count_below(std::span<const double> b, double mu) {
  double max_b2 = 1.0;
  for (double v : b) max_b2 = std::max(max_b2, v * v);
  const double pivmin = std::numeric_limits<double>::min() * max_b2;
  int count = 0;
  double d = -mu;
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (double bi : b) {
    d = -mu - bi * bi / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

inline double gershgorin_bound(std::span<const double> b) {
  double g = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double left = i > 0 ? b[i - 1] : 0.0;
    g = std::max(g, left + b[i]);
  }
  return g * (1.0 + 8.0 * std::numeric_limits<double>::epsilon()) + std::numeric_limits<double>::min();
}

}  // namespace detail

/// Positive eigenvalues of iT in decreasing order, by bisection on Sturm counts.
/// Relative accuracy is close to machine precision for every eigenvalue.
inline std::vector<double> positive_eigenvalues(const AntisymTridiagonal& t) {
  const int n = t.order();
  const int m = n / 2;
  const int nonpositive = (n + 1) / 2;
  const auto b = t.entries();
  const double upper = detail::gershgorin_bound(b);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  std::vector<double> lambda(static_cast<std::size_t>(m));
  for (int rank = 1; rank <= m; ++rank) {  // rank-th smallest positive eigenvalue
    double lo = 0.0;
    double hi = upper;
    for (int it = 0; it < 4000 && hi - lo > 2.0 * eps * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (detail::count_below(b, mid) >= nonpositive + rank)
        hi = mid;
      else
        lo = mid;
    }
    lambda[static_cast<std::size_t>(m - rank)] = 0.5 * (lo + hi);
  }
  return lambda;
}

/// Relative separation below which two positive eigenvalues count as colliding.
inline constexpr double kDegeneracyTolerance = 1e-12;

/// q_i^2 = | P_{n-1}(lambda_i) / P_n'(lambda_i) |, with P_n' expanded over the
/// +-lambda pairing. Loses relative accuracy when q_i is tiny, since P_{n-1}
/// then nearly vanishes at lambda_i.
inline double first_component_charpoly(const AntisymTridiagonal& t, std::span<const double> lambda, std::size_t i) {
  const int n = t.order();
  const double li = lambda[i];
  const auto seq = charpoly_sequence(t, li);
  double log_deriv = std::log(2.0) + (n % 2 == 1 ? 2.0 : 1.0) * std::log(li);
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (j == i) continue;
    log_deriv += std::log(std::abs(li - lambda[j])) + std::log(li + lambda[j]);
  }
  return std::exp(0.5 * (seq.log_abs(n - 1) - log_deriv));
}

/// |first component| of the unit eigenvector of T_s for the eigenvalue lambda,
/// from the twisted factorization T_s - lambda I = N_r Delta N_r^T. Components
/// are products of factorization ratios, so tiny ones keep relative accuracy.
inline double first_component_twisted(const AntisymTridiagonal& t, double lambda) {
  const int n = t.order();
  const auto sn = static_cast<std::size_t>(n);
  std::vector<double> e(sn - 1), d(sn), p(sn);
  double max_e2 = 1.0;
  for (int k = 0; k + 1 < n; ++k) {
    e[static_cast<std::size_t>(k)] = t.superdiag(k);
    max_e2 = std::max(max_e2, e[static_cast<std::size_t>(k)] * e[static_cast<std::size_t>(k)]);
  }
  const double pivmin = std::numeric_limits<double>::min() * max_e2;
  auto guard = [&](double v) { return std::abs(v) < pivmin ? -pivmin : v; };
  d[0] = guard(-lambda);
  for (std::size_t k = 1; k < sn; ++k) d[k] = guard(-lambda - e[k - 1] * e[k - 1] / d[k - 1]);
  p[sn - 1] = guard(-lambda);
  for (std::size_t k = sn - 1; k-- > 0;) p[k] = guard(-lambda - e[k] * e[k] / p[k + 1]);
  std::size_t r = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < sn; ++k) {
    const double g = std::abs(d[k] + p[k] + lambda);
    if (g < best) {
      best = g;
      r = k;
    }
  }
  // log|v_k| with v_r = 1.
  std::vector<double> lv(sn, 0.0);
  for (std::size_t k = r; k-- > 0;) lv[k] = lv[k + 1] + std::log(std::abs(e[k] / d[k]));
  for (std::size_t k = r + 1; k < sn; ++k) lv[k] = lv[k - 1] + std::log(std::abs(e[k - 1] / p[k]));
  double s = 0.0;
  for (double v : lv) s += std::exp(2.0 * (v - lv[0]));
  return 1.0 / std::sqrt(s);
}

/// Decompose T into (lambda, q[, z]). The q_i are first components of the
/// eigenvectors (equal to first_component_charpoly in exact arithmetic) and
/// z^2 = |P_{n-1}(0)| / prod lambda_i^2.
inline SpectralData positive_spectrum(const AntisymTridiagonal& t) {
  const int n = t.order();
  const int m = n / 2;
  SpectralData sd;
  sd.n = n;
  sd.lambda = positive_eigenvalues(t);
  const auto& lam = sd.lambda;
  const double lmax = lam.front();
  for (int i = 0; i < m; ++i) {
    const double gap = i + 1 < m ? lam[static_cast<std::size_t>(i)] - lam[static_cast<std::size_t>(i + 1)]
                                 : lam[static_cast<std::size_t>(i)];
    if (!(gap > kDegeneracyTolerance * lmax))
      throw DegeneracyError("positive_spectrum: eigenvalues collide within the degeneracy tolerance");
  }

  sd.q.resize(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < sd.q.size(); ++i) sd.q[i] = first_component_twisted(t, lam[i]);
  if (n % 2 == 1) {
    const auto seq = charpoly_sequence(t, 0.0);
    double log_prod = 0.0;
    for (double l : lam) log_prod += 2.0 * std::log(l);
    sd.z = std::exp(0.5 * (seq.log_abs(n - 1) - log_prod));
  }
  return sd;
}

/// Rebuild the unique reduced tridiagonal matrix with the given positive
/// spectrum and first components: Lanczos on diag(lambda, -lambda[, 0]) started
/// from (q, q[, z]), with full reorthogonalization.
inline AntisymTridiagonal reconstruct_tridiagonal(const SpectralData& sd) {
  sd.validate();
  const auto ex = expand_spectrum(sd);
  const int n = sd.n;
  const Eigen::Map<const Eigen::VectorXd> diag(ex.eigenvalues.data(), n);

  Eigen::MatrixXd basis(n, n);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = std::sqrt(ex.weights[static_cast<std::size_t>(i)]);
  v /= v.norm();
  basis.col(0) = v;

  const double scale = sd.lambda.front();
  std::vector<double> b(static_cast<std::size_t>(n - 1));
  double beta_prev = 0.0;
  for (int j = 0; j + 1 < n; ++j) {
    Eigen::VectorXd w = diag.cwiseProduct(basis.col(j));
    if (j > 0) w -= beta_prev * basis.col(j - 1);
    w -= basis.col(j).dot(w) * basis.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      const auto done = basis.leftCols(j + 1);
      w -= done * (done.transpose() * w);
    }
    const double beta = w.norm();
    if (!(beta > 64.0 * std::numeric_limits<double>::epsilon() * scale))
      throw ConditioningError("reconstruct_tridiagonal: Lanczos breakdown");
    basis.col(j + 1) = w / beta;
    b[static_cast<std::size_t>(n - 2 - j)] = beta;
    beta_prev = beta;
  }
  return AntisymTridiagonal(std::move(b));
}

/// Max relative residual of P_{n-1}(x)/P_n(x) = sum_i c_i / (x - mu_i) over 10
/// random real points; each residual is scaled by sum |c_i / (x - mu_i)|.
inline double secular_check(const AntisymTridiagonal& t, RandomStream& rs, int points = 10) {
  const auto sd = positive_spectrum(t);
  const auto ex = expand_spectrum(sd);
  const int n = t.order();
  const double lmax = sd.lambda.front();
  double worst = 0.0;
  for (int p = 0; p < points;) {
    const double x = lmax * (3.0 * rs.uniform_open() - 1.5);
    double rhs = 0.0;
    double mag = 0.0;
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ex.eigenvalues.size(); ++i) {
      const double term = ex.weights[i] / (x - ex.eigenvalues[i]);
      rhs += term;
      mag += std::abs(term);
      closest = std::min(closest, std::abs(x - ex.eigenvalues[i]));
    }
    if (closest < 1e-6 * lmax) continue;  // too close to a pole, resample
    const auto seq = charpoly_sequence(t, x);
    const double lhs = seq.ratio(n - 1, n);
    worst = std::max(worst, std::abs(lhs - rhs) / mag);
    ++p;
  }
  return worst;
}

/// (1,1) entry of (I - s iT)^{-1}, by the continued fraction of the tridiagonal
/// resolvent.
inline double resolvent_11(const AntisymTridiagonal& t, double s) {
  const int n = t.order();
  double g = 1.0;
  for (int r = n - 2; r >= 0; --r) {
    const double br = t.superdiag(r);
    g = 1.0 / (1.0 - s * s * br * br * g);
  }
  return g;
}

/// Max relative residual of ((I - s iT)^{-1})_{11} = sum_j 2 q_j^2 / (1 - s^2 lambda_j^2) [+ z^2]
/// at random s with |s| lambda_1 < 0.9.
inline double resolvent_check(const AntisymTridiagonal& t, const SpectralData& sd, RandomStream& rs,
                              int points = 10) {
  const double lmax = sd.lambda.front();
  double worst = 0.0;
  for (int p = 0; p < points; ++p) {
    const double s = (p == 0 ? 0.0 : 0.9 * (2.0 * rs.uniform_open() - 1.0) / lmax);
    double rhs = sd.z ? *sd.z * *sd.z : 0.0;
    for (std::size_t j = 0; j < sd.lambda.size(); ++j) {
      const double sl = s * sd.lambda[j];
      rhs += 2.0 * sd.q[j] * sd.q[j] / (1.0 - sl * sl);
    }
    const double lhs = resolvent_11(t, s);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
  }
  return worst;
}

/// Relative residuals of the first three moment equations
///
///     1 = sum 2 q^2 [+ z^2],
///     b_{n-1}^2 = sum 2 q^2 lambda^2,
///     b_{n-1}^4 + b_{n-1}^2 b_{n-2}^2 = sum 2 q^2 lambda^4.
inline std::array<double, 3> moment_equations_check(const AntisymTridiagonal& t, const SpectralData& sd) {
  const int n = t.order();
  double m0 = 0.0;
  double m2 = 0.0;
  double m4 = 0.0;
  for (std::size_t j = 0; j < sd.lambda.size(); ++j) {
    const double w = 2.0 * sd.q[j] * sd.q[j];
    const double l2 = sd.lambda[j] * sd.lambda[j];
    m0 += w;
    m2 += w * l2;
    m4 += w * l2 * l2;
  }
  if (sd.z) m0 += *sd.z * *sd.z;
  const double top = t.b(n - 1) * t.b(n - 1);
  const double next = n >= 3 ? t.b(n - 2) * t.b(n - 2) : 0.0;
  const double lhs4 = top * top + top * next;
  auto rel = [](double lhs, double rhs) { return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)); };
  return {std::abs(1.0 - m0), rel(top, m2), rel(lhs4, m4)};
}

}  // namespace skewbeta
