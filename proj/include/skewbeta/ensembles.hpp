#pragma once

// Random matrix families: the anti-symmetric tridiagonal beta model, the dense
// anti-symmetric GUE and its Householder reduction, and the chi bidiagonal
// matrices of the Laguerre construction.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "skewbeta/errors.hpp"
#include "skewbeta/random.hpp"

namespace skewbeta {

/// Real anti-symmetric tridiagonal matrix in reduced form
///
///     [  0     b_{n-1}                 ]
///     [ -b_{n-1}  0    b_{n-2}         ]
///     [        ...   ...     ...       ]
///     [             -b_2   0     b_1   ]
///     [                   -b_1   0     ]
///
/// Entries are indexed from the bottom corner: b(1) is the (n-1, n) entry.
class AntisymTridiagonal {
 public:
  AntisymTridiagonal() = default;

  /// `b_bottom_up[j-1]` holds b_j. Every entry must be strictly positive.
  explicit AntisymTridiagonal(std::vector<double> b_bottom_up) : b_(std::move(b_bottom_up)) {
    if (b_.empty()) throw SizeError("AntisymTridiagonal: order must be at least 2");
    for (double v : b_)
      if (!(v > 0.0) || !std::isfinite(v))
        throw InputError("AntisymTridiagonal: off-diagonal entries must be positive and finite");
  }

  [[nodiscard]] int order() const { return static_cast<int>(b_.size()) + 1; }

  /// b_j, 1 <= j <= n-1.
  [[nodiscard]] double b(int j) const { return b_[static_cast<std::size_t>(j - 1)]; }

  /// (b_1, ..., b_{n-1}).
  [[nodiscard]] std::span<const double> entries() const { return b_; }

  /// T(r, r+1) for zero-based row r.
  [[nodiscard]] double superdiag(int r) const { return b(order() - 1 - r); }

  [[nodiscard]] double sum_squares() const {
    double s = 0.0;
    for (double v : b_) s += v * v;
    return s;
  }

  [[nodiscard]] Eigen::MatrixXd dense() const {
    const int n = order();
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r + 1 < n; ++r) {
      t(r, r + 1) = superdiag(r);
      t(r + 1, r) = -superdiag(r);
    }
    return t;
  }

  /// The symmetric tridiagonal T_s with the minus signs removed; iT and T_s
  /// are diagonally similar and share the characteristic polynomial.
  [[nodiscard]] Eigen::MatrixXd symmetric_dense() const {
    Eigen::MatrixXd t = dense();
    return t.cwiseAbs();
  }

 private:
  std::vector<double> b_;
};

/// Dense real anti-symmetric matrix.
class DenseAntisym {
 public:
  explicit DenseAntisym(Eigen::MatrixXd a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols()) throw InputError("DenseAntisym: matrix must be square");
    if (a_.rows() < 2) throw SizeError("DenseAntisym: order must be at least 2");
    for (Eigen::Index i = 0; i < a_.rows(); ++i) {
      if (a_(i, i) != 0.0) throw InputError("DenseAntisym: diagonal must be zero");
      for (Eigen::Index j = i + 1; j < a_.cols(); ++j)
        if (a_(j, i) != -a_(i, j)) throw InputError("DenseAntisym: matrix is not anti-symmetric");
    }
  }

  /// Build from the strict upper triangle.
  static DenseAntisym from_upper(const Eigen::MatrixXd& upper) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(upper.rows(), upper.cols());
    for (Eigen::Index i = 0; i < upper.rows(); ++i)
      for (Eigen::Index j = i + 1; j < upper.cols(); ++j) {
        a(i, j) = upper(i, j);
        a(j, i) = -upper(i, j);
      }
    return DenseAntisym(std::move(a));
  }

  [[nodiscard]] int order() const { return static_cast<int>(a_.rows()); }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const { return a_; }
  [[nodiscard]] double operator()(int i, int j) const { return a_(i, j); }

 private:
  Eigen::MatrixXd a_;
};

/// Lower bidiagonal matrix with `rows` in {cols, cols + 1}: diagonal d (length
/// cols) and subdiagonal e (length rows - 1). All entries are nonnegative.
class LowerBidiagonal {
 public:
  LowerBidiagonal(int rows, int cols, std::vector<double> d, std::vector<double> e)
      : rows_(rows), cols_(cols), d_(std::move(d)), e_(std::move(e)) {
    if (cols < 1 || (rows != cols && rows != cols + 1))
      throw InputError("LowerBidiagonal: rows must equal cols or cols + 1");
    if (static_cast<int>(d_.size()) != cols || static_cast<int>(e_.size()) != rows - 1)
      throw InputError("LowerBidiagonal: entry vectors have the wrong length");
    for (double v : d_)
      if (!(v >= 0.0)) throw InputError("LowerBidiagonal: entries must be nonnegative");
    for (double v : e_)
      if (!(v >= 0.0)) throw InputError("LowerBidiagonal: entries must be nonnegative");
  }

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] std::span<const double> diagonal() const { return d_; }
  [[nodiscard]] std::span<const double> subdiagonal() const { return e_; }

  [[nodiscard]] Eigen::MatrixXd dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows_, cols_);
    for (int i = 0; i < cols_; ++i) m(i, i) = d_[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < rows_; ++i) m(i + 1, i) = e_[static_cast<std::size_t>(i)];
    return m;
  }

  [[nodiscard]] LowerBidiagonal scaled(double factor) const {
    auto d = d_;
    auto e = e_;
    for (auto& v : d) v *= factor;
    for (auto& v : e) v *= factor;
    return {rows_, cols_, std::move(d), std::move(e)};
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> d_;
  std::vector<double> e_;
};

enum class EnsembleKind { AntisymTridiagonal, AntisymDenseGue, LaguerreBidiagonal, CMatrix, Chain, LaguerreMap };

inline std::string_view to_string(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::AntisymTridiagonal: return "antisym-trid";
    case EnsembleKind::AntisymDenseGue: return "antisym-dense-gue";
    case EnsembleKind::LaguerreBidiagonal: return "laguerre-bidiag";
    case EnsembleKind::CMatrix: return "c-matrix";
    case EnsembleKind::Chain: return "chain";
    case EnsembleKind::LaguerreMap: return "laguerre-map";
  }
  return "unknown";
}

inline std::optional<EnsembleKind> parse_ensemble_kind(std::string_view s) {
  for (auto k : {EnsembleKind::AntisymTridiagonal, EnsembleKind::AntisymDenseGue, EnsembleKind::LaguerreBidiagonal,
                 EnsembleKind::CMatrix, EnsembleKind::Chain, EnsembleKind::LaguerreMap})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

/// Parameters of a sampled family. For c-matrix, `n` is the column count k.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::AntisymTridiagonal;
  int n = 2;
  double beta = 2.0;
  std::optional<double> a;

  void validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be positive");
    switch (kind) {
      case EnsembleKind::LaguerreBidiagonal: {
        if (n < 1) throw SizeError("laguerre-bidiag: n must be at least 1");
        if (!a) throw ParameterError("laguerre-bidiag: parameter a is required");
        if (!(2.0 * *a - (n - 1) * beta > 0.0))
          throw ParameterError("laguerre-bidiag: requires 2a - (n-1) beta > 0");
        break;
      }
      case EnsembleKind::CMatrix:
        if (n < 1) throw SizeError("c-matrix: k must be at least 1");
        break;
      default:
        if (n < 2) throw SizeError(std::string(to_string(kind)) + ": n must be at least 2");
    }
  }
};

/// The anti-symmetric Gaussian beta tridiagonal model: b_k = chi-tilde_{k beta / 2},
/// i.e. b_k^2 ~ Gamma(k beta / 4, 1), independently.
inline AntisymTridiagonal build_antisym_tridiagonal(int n, double beta, RandomStream& rs) {
  if (n < 2) throw SizeError("build_antisym_tridiagonal: n must be at least 2");
  if (!(beta > 0.0)) throw ParameterError("build_antisym_tridiagonal: beta must be positive");
  std::vector<double> b(static_cast<std::size_t>(n - 1));
  for (int k = 1; k < n; ++k) b[static_cast<std::size_t>(k - 1)] = sample_chi_tilde(k * beta / 2.0, rs);
  return AntisymTridiagonal(std::move(b));
}

/// Real anti-symmetric matrix -i H for H in the anti-symmetric GUE. Strict upper
/// entries are i.i.d. N[0, 1/2], so each row norm squared is Gamma((n-1)/2, 1).
inline DenseAntisym build_dense_antisym_gue(int n, RandomStream& rs) {
  if (n < 2) throw SizeError("build_dense_antisym_gue: n must be at least 2");
  Eigen::MatrixXd upper = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) upper(i, j) = sample_normal(0.0, 0.5, rs);
  return DenseAntisym::from_upper(upper);
}

/// Orthogonal similarity reduction of a dense anti-symmetric matrix to reduced
/// tridiagonal form. Step j reflects entries j+1..n-1 of column j onto e_1; the
/// produced superdiagonal entry is made nonnegative by a diagonal sign flip.
inline AntisymTridiagonal householder_reduce(const DenseAntisym& input) {
  const int n = input.order();
  Eigen::MatrixXd a = input.matrix();

  auto flip = [&](int k) {
    a.row(k) *= -1.0;
    a.col(k) *= -1.0;
  };

  for (int j = 0; j + 2 < n; ++j) {
    const int m = n - j - 1;
    Eigen::VectorXd x = a.col(j).tail(m);
    const double alpha = x.norm();
    if (alpha == 0.0) throw DegeneracyError("householder_reduce: zero pivot column");
    const double s = x(0) >= 0.0 ? 1.0 : -1.0;
    Eigen::VectorXd v = x;
    v(0) += s * alpha;
    const double vv = v.squaredNorm();
    // Only the trailing rows/cols change: A <- H A H with H = I - 2 v v^T / v^T v.
    Eigen::MatrixXd rows = a.bottomRows(m);
    rows -= (2.0 / vv) * v * (v.transpose() * rows);
    a.bottomRows(m) = rows;
    Eigen::MatrixXd cols = a.rightCols(m);
    cols -= (2.0 / vv) * (cols * v) * v.transpose();
    a.rightCols(m) = cols;
    // Restore the exact structure: zeros outside the band, anti-symmetry, zero diagonal.
    a.col(j).tail(m).setZero();
    a.row(j).tail(m).setZero();
    a(j + 1, j) = -s * alpha;
    a(j, j + 1) = s * alpha;
    Eigen::MatrixXd trailing = a.bottomRightCorner(m, m);
    a.bottomRightCorner(m, m) = 0.5 * (trailing - trailing.transpose());
    if (s < 0.0) flip(j + 1);
  }
  if (a(n - 2, n - 1) < 0.0) flip(n - 1);

  std::vector<double> b(static_cast<std::size_t>(n - 1));
  for (int r = 0; r + 1 < n; ++r) {
    const double v = a(r, r + 1);
    if (!(v > 0.0)) throw DegeneracyError("householder_reduce: zero off-diagonal entry");
    b[static_cast<std::size_t>(n - 2 - r)] = v;
  }
  return AntisymTridiagonal(std::move(b));
}

/// The n x n chi bidiagonal B_{beta,n,a}: diagonal chi_{2a}, chi_{2a-beta}, ...,
/// chi_{2a-(n-1)beta}; subdiagonal chi_{(n-1)beta}, ..., chi_{beta} (standard chi).
inline LowerBidiagonal build_laguerre_bidiagonal(int n, double a, double beta, RandomStream& rs) {
  EnsembleSpec{EnsembleKind::LaguerreBidiagonal, n, beta, a}.validate();
  std::vector<double> d(static_cast<std::size_t>(n));
  std::vector<double> e(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    d[static_cast<std::size_t>(i)] = sample_standard_chi(2.0 * a - i * beta, rs);
    if (i + 1 < n) e[static_cast<std::size_t>(i)] = sample_standard_chi((n - 1 - i) * beta, rs);
  }
  return {n, n, std::move(d), std::move(e)};
}

/// The (k+1) x k matrix obtained from C_{beta,k} by dropping its zero last
/// column: diagonal chi_{k beta}, ..., chi_{beta}; subdiagonal
/// chi_{(2k-1) beta/2}, ..., chi_{beta/2} (standard chi).
inline LowerBidiagonal build_c_matrix(int k, double beta, RandomStream& rs) {
  EnsembleSpec{EnsembleKind::CMatrix, k, beta, std::nullopt}.validate();
  std::vector<double> d(static_cast<std::size_t>(k));
  std::vector<double> e(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    d[static_cast<std::size_t>(i)] = sample_standard_chi((k - i) * beta, rs);
    e[static_cast<std::size_t>(i)] = sample_standard_chi((2 * (k - i) - 1) * beta / 2.0, rs);
  }
  return {k + 1, k, std::move(d), std::move(e)};
}

}  // namespace skewbeta
