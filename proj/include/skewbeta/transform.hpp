#pragma once

// The orthogonal route to the tridiagonal model: alternating-sign perfect
// shuffles, the Laguerre-map sampler, the Cholesky reindexing of the odd case,
// and the Vandermonde and Jacobian identities of the map b -> (lambda, q).

#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skewbeta/ensembles.hpp"
#include "skewbeta/errors.hpp"
#include "skewbeta/random.hpp"
#include "skewbeta/spectral.hpp"

namespace skewbeta {

/// Q = D P on 2n coordinates. Row i (1-based) of P has its one in column
/// (i+1)/2 for odd i and n + i/2 for even i; D(i,i) = (-1)^{floor(i/2)}.
/// Stored sparsely: Q(i, column(i)) = sign(i), zero-based.
struct SignedPermutation {
  int half = 0;
  std::vector<int> column;
  std::vector<int> sign;

  [[nodiscard]] int size() const { return 2 * half; }

  [[nodiscard]] Eigen::MatrixXi dense() const {
    Eigen::MatrixXi q = Eigen::MatrixXi::Zero(size(), size());
    for (int i = 0; i < size(); ++i) q(i, column[static_cast<std::size_t>(i)]) = sign[static_cast<std::size_t>(i)];
    return q;
  }

  /// Exact orthogonality: the column map is a bijection and every sign is +-1.
  [[nodiscard]] bool is_orthogonal() const {
    std::vector<char> hit(static_cast<std::size_t>(size()), 0);
    for (int i = 0; i < size(); ++i) {
      const int c = column[static_cast<std::size_t>(i)];
      if (c < 0 || c >= size() || hit[static_cast<std::size_t>(c)]) return false;
      hit[static_cast<std::size_t>(c)] = 1;
      if (sign[static_cast<std::size_t>(i)] != 1 && sign[static_cast<std::size_t>(i)] != -1) return false;
    }
    return true;
  }

  /// Q M Q^T, computed entrywise as sign_r sign_c M(column_r, column_c).
  [[nodiscard]] Eigen::MatrixXd conjugate(const Eigen::MatrixXd& m) const {
    Eigen::MatrixXd out(size(), size());
    for (int r = 0; r < size(); ++r)
      for (int c = 0; c < size(); ++c)
        out(r, c) = sign[static_cast<std::size_t>(r)] * sign[static_cast<std::size_t>(c)] *
                    m(column[static_cast<std::size_t>(r)], column[static_cast<std::size_t>(c)]);
    return out;
  }
};

inline SignedPermutation asps(int n) {
  if (n < 1) throw SizeError("asps: n must be at least 1");
  SignedPermutation q;
  q.half = n;
  q.column.resize(static_cast<std::size_t>(2 * n));
  q.sign.resize(static_cast<std::size_t>(2 * n));
  for (int i = 1; i <= 2 * n; ++i) {
    q.column[static_cast<std::size_t>(i - 1)] = (i % 2 == 1 ? (i + 1) / 2 : n + i / 2) - 1;
    q.sign[static_cast<std::size_t>(i - 1)] = (i / 2) % 2 == 0 ? 1 : -1;
  }
  return q;
}

/// V_Y = [[0, -Y], [Y^T, 0]].
inline Eigen::MatrixXd block_embedding(const Eigen::MatrixXd& y) {
  const auto r = y.rows();
  const auto c = y.cols();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(r + c, r + c);
  v.topRightCorner(r, c) = -y;
  v.bottomLeftCorner(c, r) = y.transpose();
  return v;
}

/// Square k x k bidiagonal whose shuffle is the order-2k tridiagonal T:
/// diagonal (b_{2k-1}, b_{2k-3}, ..., b_1), subdiagonal (b_{2k-2}, ..., b_2).
inline LowerBidiagonal shuffle_bidiagonal(const AntisymTridiagonal& t) {
  const int n = t.order();
  if (n % 2 != 0) throw SizeError("shuffle_bidiagonal: order must be even");
  const int k = n / 2;
  std::vector<double> d(static_cast<std::size_t>(k));
  std::vector<double> e(static_cast<std::size_t>(k - 1));
  for (int i = 0; i < k; ++i) d[static_cast<std::size_t>(i)] = t.b(2 * k - 1 - 2 * i);
  for (int i = 0; i + 1 < k; ++i) e[static_cast<std::size_t>(i)] = t.b(2 * k - 2 - 2 * i);
  return {k, k, std::move(d), std::move(e)};
}

/// Inverse of shuffle_bidiagonal; the entries of B must be positive.
inline AntisymTridiagonal tridiagonal_from_bidiagonal(const LowerBidiagonal& b) {
  if (b.rows() != b.cols()) throw InputError("tridiagonal_from_bidiagonal: B must be square");
  const int k = b.cols();
  std::vector<double> v(static_cast<std::size_t>(2 * k - 1));
  for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(2 * k - 2 - 2 * i)] = b.diagonal()[static_cast<std::size_t>(i)];
  for (int i = 0; i + 1 < k; ++i)
    v[static_cast<std::size_t>(2 * k - 3 - 2 * i)] = b.subdiagonal()[static_cast<std::size_t>(i)];
  return AntisymTridiagonal(std::move(v));
}

/// Order-(2k+1) tridiagonal read off the (k+1) x k matrix C: diagonal
/// (b_{2k}, b_{2k-2}, ..., b_2), subdiagonal (b_{2k-1}, ..., b_1).
inline AntisymTridiagonal tridiagonal_from_c_matrix(const LowerBidiagonal& c) {
  if (c.rows() != c.cols() + 1) throw InputError("tridiagonal_from_c_matrix: C must be (k+1) x k");
  const int k = c.cols();
  std::vector<double> v(static_cast<std::size_t>(2 * k));
  for (int i = 0; i < k; ++i) {
    v[static_cast<std::size_t>(2 * k - 1 - 2 * i)] = c.diagonal()[static_cast<std::size_t>(i)];
    v[static_cast<std::size_t>(2 * k - 2 - 2 * i)] = c.subdiagonal()[static_cast<std::size_t>(i)];
  }
  return AntisymTridiagonal(std::move(v));
}

/// max |Q V_B Q^T - T(b)| for the order-2k tridiagonal T whose shuffle layout is B.
/// Every entry of the product is a single signed copy of an entry of V_B, so
/// the residual is exactly zero when the bookkeeping is right.
inline double shuffle_conjugation_check(const LowerBidiagonal& b) {
  if (b.rows() != b.cols()) throw InputError("shuffle_conjugation_check: B must be square");
  const auto q = asps(b.cols());
  const Eigen::MatrixXd lhs = q.conjugate(block_embedding(b.dense()));
  const Eigen::MatrixXd rhs = tridiagonal_from_bidiagonal(b).dense();
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

/// The tridiagonal model sampled through the beta-Laguerre bidiagonal: for
/// n = 2k the entries of B_{beta,k,a}/sqrt(2) with a = (2k-1) beta/4, for
/// n = 2k+1 those of C_{beta,k}/sqrt(2) with its zero column dropped.
inline AntisymTridiagonal laguerre_map_sample(int n, double beta, RandomStream& rs) {
  if (n < 2) throw SizeError("laguerre_map_sample: n must be at least 2");
  if (!(beta > 0.0)) throw ParameterError("laguerre_map_sample: beta must be positive");
  const int k = n / 2;
  const double s = 1.0 / std::numbers::sqrt2;
  if (n % 2 == 0) return tridiagonal_from_bidiagonal(build_laguerre_bidiagonal(k, (2 * k - 1) * beta / 4.0, beta, rs).scaled(s));
  return tridiagonal_from_c_matrix(build_c_matrix(k, beta, rs).scaled(s));
}

/// Solves x_{2i+1}^2 + x_{2i-2}^2 = b_{2i}^2 + b_{2i-1}^2 (x_0 := 0) and
/// x_{2i+1} x_{2i} = b_{2i+1} b_{2i} for i = 1..k, given b_1^2, ..., b_{2k+1}^2.
/// Returns x_2^2, ..., x_{2k+1}^2 (entry j holds x_{j+2}^2); b_{2k+1} enters only x_{2k}.
inline std::vector<double> cholesky_reindex(std::span<const double> bsq) {
  if (bsq.size() < 3 || bsq.size() % 2 == 0)
    throw InputError("cholesky_reindex: expected b_1^2, ..., b_{2k+1}^2 with k >= 1");
  for (double v : bsq)
    if (!(v > 0.0)) throw InputError("cholesky_reindex: inputs must be positive");
  const int k = static_cast<int>(bsq.size() - 1) / 2;
  auto b = [&](int i) { return bsq[static_cast<std::size_t>(i - 1)]; };
  std::vector<double> x(static_cast<std::size_t>(2 * k));
  auto xs = [&](int j) -> double& { return x[static_cast<std::size_t>(j - 2)]; };
  double prev_even = 0.0;  // x_{2i-2}^2
  for (int i = 1; i <= k; ++i) {
    const double odd = b(2 * i) + b(2 * i - 1) - prev_even;
    if (!(odd > 0.0)) throw InputError("cholesky_reindex: inputs are inconsistent (non-positive pivot)");
    xs(2 * i + 1) = odd;
    xs(2 * i) = b(2 * i) * b(2 * i + 1) / odd;
    prev_even = xs(2 * i);
  }
  return x;
}

/// log Delta(lambda^2)^2 - log RHS for the identity
///   Delta(lambda^2)^2 = prod b_i^i / (2^k prod q_i^2 lambda_i)           (n = 2k),
///   Delta(lambda^2)^2 = prod b_i^i / (2^k z prod q_i^2 lambda_i^3)       (n = 2k+1),
/// where Delta(lambda^2) = prod_{i<j} (lambda_i^2 - lambda_j^2).
inline double vandermonde_identity_check(const AntisymTridiagonal& t, const SpectralData& sd) {
  const int n = t.order();
  const int k = n / 2;
  double lhs = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      lhs += 2.0 * (std::log(sd.lambda[static_cast<std::size_t>(i)] - sd.lambda[static_cast<std::size_t>(j)]) +
                    std::log(sd.lambda[static_cast<std::size_t>(i)] + sd.lambda[static_cast<std::size_t>(j)]));
  double rhs = -k * std::numbers::ln2;
  for (int i = 1; i < n; ++i) rhs += i * std::log(t.b(i));
  const double lambda_power = n % 2 == 0 ? 1.0 : 3.0;
  for (int i = 0; i < k; ++i)
    rhs -= 2.0 * std::log(sd.q[static_cast<std::size_t>(i)]) + lambda_power * std::log(sd.lambda[static_cast<std::size_t>(i)]);
  if (sd.z) rhs -= std::log(*sd.z);
  return std::abs(lhs - rhs);
}

/// prod b_i / prod q_i lambda_i, further divided by z when n is odd.
inline double jacobian_analytic(const AntisymTridiagonal& t, const SpectralData& sd) {
  double s = 0.0;
  for (double b : t.entries()) s += std::log(b);
  for (std::size_t i = 0; i < sd.lambda.size(); ++i) s -= std::log(sd.q[i]) + std::log(sd.lambda[i]);
  if (sd.z) s -= std::log(*sd.z);
  return std::exp(s);
}

/// Free coordinates of the chart used by jacobian_numeric: (lambda, q_1..q_{k-1})
/// for n = 2k with q_k eliminated, (lambda, q_1..q_k) for n = 2k+1 with z eliminated.
inline std::vector<double> chart_coordinates(const SpectralData& sd) {
  std::vector<double> c(sd.lambda.begin(), sd.lambda.end());
  const std::size_t free_q = sd.n % 2 == 0 ? sd.q.size() - 1 : sd.q.size();
  c.insert(c.end(), sd.q.begin(), sd.q.begin() + static_cast<std::ptrdiff_t>(free_q));
  return c;
}

inline SpectralData from_chart(int n, const std::vector<double>& c) {
  const std::size_t k = static_cast<std::size_t>(n / 2);
  SpectralData sd;
  sd.n = n;
  sd.lambda.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
  sd.q.assign(c.begin() + static_cast<std::ptrdiff_t>(k), c.end());
  double rest = 1.0;
  for (double q : sd.q) rest -= 2.0 * q * q;
  if (n % 2 == 0) {
    if (!(rest > 0.0)) throw AccuracyError("jacobian_numeric: finite-difference probe left the chart");
    sd.q.push_back(std::sqrt(rest / 2.0));
  } else {
    if (!(rest > 0.0)) throw AccuracyError("jacobian_numeric: finite-difference probe left the chart");
    sd.z = std::sqrt(rest);
  }
  return sd;
}

/// Chart factor relating the two Jacobians: jacobian_numeric = jacobian_analytic / factor,
/// with factor 2 q_k (n = 2k) or z (n = 2k+1).
inline double jacobian_chart_factor(const SpectralData& sd) { return sd.z ? *sd.z : 2.0 * sd.q.back(); }

/// |det d b / d(chart coordinates)| by central differences through
/// reconstruct_tridiagonal, with step h = 1e-6 max(1, |c_j|). The determinant is
/// recomputed at h/2; if the two disagree by more than 1e-4 relative the point
/// is rejected with AccuracyError. Returns the Richardson extrapolation
/// (4 d(h/2) - d(h)) / 3, which removes the O(h^2) term that dominates when z
/// or q_k is small.
inline double jacobian_numeric(const SpectralData& sd, double rel_step = 1e-6) {
  sd.validate();
  const int n = sd.n;
  const auto base = chart_coordinates(sd);
  const auto dim = static_cast<Eigen::Index>(base.size());
  if (dim != n - 1) throw InputError("jacobian_numeric: chart dimension mismatch");

  auto determinant = [&](double scale) {
    Eigen::MatrixXd jac(n - 1, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double h = scale * rel_step * std::max(1.0, std::abs(base[static_cast<std::size_t>(j)]));
      auto plus = base;
      auto minus = base;
      plus[static_cast<std::size_t>(j)] += h;
      minus[static_cast<std::size_t>(j)] -= h;
      const auto tp = reconstruct_tridiagonal(from_chart(n, plus));
      const auto tm = reconstruct_tridiagonal(from_chart(n, minus));
      for (int i = 0; i < n - 1; ++i) jac(i, j) = (tp.b(i + 1) - tm.b(i + 1)) / (2.0 * h);
    }
    return std::abs(jac.fullPivLu().determinant());
  };

  double d1 = 0.0;
  double d2 = 0.0;
  try {
    d1 = determinant(1.0);
    d2 = determinant(0.5);
  } catch (const InputError&) {
    throw AccuracyError("jacobian_numeric: finite-difference probe broke the spectral invariants");
  }
  if (!(d1 > 0.0) || !(std::abs(d1 - d2) <= 1e-4 * d1))
    throw AccuracyError("jacobian_numeric: Richardson check failed (h: " + std::to_string(d1) +
                        ", h/2: " + std::to_string(d2) + ")");
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace skewbeta
