#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "skewbeta/ensembles.hpp"
#include "skewbeta/stats.hpp"

using namespace skewbeta;

namespace {

constexpr double kAlpha = 1e-3;

double charpoly_det(const Eigen::MatrixXd& a, double x) {
  const auto n = a.rows();
  return (x * Eigen::MatrixXd::Identity(n, n) - a).determinant();
}

}  // namespace

TEST(AntisymTridiagonal, EntriesAreIndexedFromTheBottom) {
  const AntisymTridiagonal t({1.0, 2.0, 3.0});
  EXPECT_EQ(t.order(), 4);
  EXPECT_EQ(t.b(1), 1.0);
  EXPECT_EQ(t.superdiag(0), 3.0);  // top row holds b_{n-1}
  EXPECT_EQ(t.superdiag(2), 1.0);
  const auto d = t.dense();
  EXPECT_EQ(d(2, 3), 1.0);
  EXPECT_EQ(d(3, 2), -1.0);
  EXPECT_EQ(d(0, 1), 3.0);
  EXPECT_EQ((d + d.transpose()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(t.symmetric_dense()(1, 0), 3.0);
  EXPECT_DOUBLE_EQ(t.sum_squares(), 14.0);
}

TEST(AntisymTridiagonal, RejectsBadEntries) {
  EXPECT_THROW(AntisymTridiagonal(std::vector<double>{}), SizeError);
  EXPECT_THROW(AntisymTridiagonal({1.0, 0.0}), InputError);
  EXPECT_THROW(AntisymTridiagonal({1.0, -2.0}), InputError);
  EXPECT_THROW(AntisymTridiagonal({1.0, std::nan("")}), InputError);
}

TEST(EnsembleSpec, ValidatesConstraints) {
  EXPECT_THROW((EnsembleSpec{EnsembleKind::AntisymTridiagonal, 1, 2.0, std::nullopt}.validate()), SizeError);
  EXPECT_THROW((EnsembleSpec{EnsembleKind::AntisymTridiagonal, 4, 0.0, std::nullopt}.validate()), ParameterError);
  EXPECT_THROW((EnsembleSpec{EnsembleKind::LaguerreBidiagonal, 3, 2.0, 0.5}.validate()), ParameterError);
  EXPECT_THROW((EnsembleSpec{EnsembleKind::LaguerreBidiagonal, 3, 2.0, std::nullopt}.validate()), ParameterError);
  EXPECT_NO_THROW((EnsembleSpec{EnsembleKind::LaguerreBidiagonal, 3, 2.0, 2.5}.validate()));
  EXPECT_NO_THROW((EnsembleSpec{EnsembleKind::CMatrix, 1, 2.0, std::nullopt}.validate()));
}

TEST(EnsembleSpec, KindNamesRoundTrip) {
  for (auto k : {EnsembleKind::AntisymTridiagonal, EnsembleKind::AntisymDenseGue, EnsembleKind::LaguerreBidiagonal,
                 EnsembleKind::CMatrix, EnsembleKind::Chain, EnsembleKind::LaguerreMap})
    EXPECT_EQ(parse_ensemble_kind(to_string(k)), k);
  EXPECT_FALSE(parse_ensemble_kind("gue").has_value());
}

TEST(BuildTridiagonal, RejectsSmallOrder) {
  RandomStream rs(1);
  EXPECT_THROW(build_antisym_tridiagonal(1, 2.0, rs), SizeError);
  EXPECT_THROW(build_antisym_tridiagonal(3, -1.0, rs), ParameterError);
}

TEST(BuildTridiagonal, EntryLawsAreGamma) {
  const int n = 6;
  const double beta = 1.0;
  std::vector<std::vector<double>> sq(n - 1);
  const RandomStream root(2);
  for (int r = 0; r < 20000; ++r) {
    auto rs = root.split(static_cast<std::uint64_t>(r));
    const auto t = build_antisym_tridiagonal(n, beta, rs);
    for (int k = 1; k < n; ++k) {
      ASSERT_GT(t.b(k), 0.0);
      sq[static_cast<std::size_t>(k - 1)].push_back(t.b(k) * t.b(k));
    }
  }
  for (int k = 1; k < n; ++k) {
    const auto ks = ks_one_sample(sq[static_cast<std::size_t>(k - 1)],
                                  [&](double v) { return oracle::gamma_cdf(k * beta / 4.0, v); });
    EXPECT_GE(ks.p_value, kAlpha) << "b_" << k;
  }
}

TEST(BuildTridiagonal, SumOfSquaresMean) {
  // n = 4, beta = 2: E = 3 and Var = 3 (sum of independent gammas of total shape 3).
  const RandomStream root(3);
  std::vector<double> s;
  for (int r = 0; r < 20000; ++r) {
    auto rs = root.split(static_cast<std::uint64_t>(r));
    s.push_back(build_antisym_tridiagonal(4, 2.0, rs).sum_squares());
  }
  EXPECT_LE(std::abs(moment_test(s, 3.0, 3.0)), 3.0);
}

TEST(DenseGue, AntisymmetricWithHalfVarianceEntries) {
  const RandomStream root(4);
  std::vector<double> entries, rows;
  for (int r = 0; r < 5000; ++r) {
    auto rs = root.split(static_cast<std::uint64_t>(r));
    const auto a = build_dense_antisym_gue(5, rs);
    ASSERT_EQ((a.matrix() + a.matrix().transpose()).cwiseAbs().maxCoeff(), 0.0);
    entries.push_back(a(1, 3));
    rows.push_back(a.matrix().row(0).squaredNorm());
  }
  const auto ks1 = ks_one_sample(entries, [](double v) { return 0.5 * std::erfc(-v); });
  EXPECT_GE(ks1.p_value, kAlpha);
  const auto ks2 = ks_one_sample(rows, [](double v) { return oracle::gamma_cdf(2.0, v); });
  EXPECT_GE(ks2.p_value, kAlpha);
}

TEST(DenseAntisym, RejectsNonAntisymmetric) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 1) = 1.0;
  EXPECT_THROW(DenseAntisym{m}, InputError);
  EXPECT_THROW(DenseAntisym(Eigen::MatrixXd::Zero(1, 1)), SizeError);
}

TEST(Householder, HandCaseThreeFourFive) {
  Eigen::MatrixXd upper = Eigen::MatrixXd::Zero(3, 3);
  upper(0, 1) = 3.0;
  upper(0, 2) = 4.0;
  upper(1, 2) = 2.0;
  const auto t = householder_reduce(DenseAntisym::from_upper(upper));
  EXPECT_NEAR(t.superdiag(0), 5.0, 1e-14);
  // The remaining entry is fixed by the Frobenius norm: 9 + 16 + 4 = 25 + b_1^2.
  EXPECT_NEAR(t.b(1), 2.0, 1e-14);
}

TEST(Householder, OrderTwoIsUnchanged) {
  Eigen::MatrixXd upper = Eigen::MatrixXd::Zero(2, 2);
  upper(0, 1) = 0.7;
  EXPECT_DOUBLE_EQ(householder_reduce(DenseAntisym::from_upper(upper)).b(1), 0.7);
  upper(0, 1) = -0.7;  // sign flip to the reduced form
  EXPECT_DOUBLE_EQ(householder_reduce(DenseAntisym::from_upper(upper)).b(1), 0.7);
}

TEST(Householder, PreservesCharacteristicPolynomial) {
  const RandomStream root(5);
  for (int r = 0; r < 30; ++r) {
    auto rs = root.split(static_cast<std::uint64_t>(r));
    const int n = 2 + r % 9;
    const auto a = build_dense_antisym_gue(n, rs);
    const auto t = householder_reduce(a);
    ASSERT_EQ(t.order(), n);
    EXPECT_NEAR(a.matrix().row(0).norm(), t.superdiag(0), 1e-12 * t.superdiag(0));
    for (int p = 0; p < 10; ++p) {
      const double x = 4.0 * rs.uniform_open() - 2.0;
      const double lhs = charpoly_det(a.matrix(), x);
      const double rhs = charpoly_det(t.dense(), x);
      EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(lhs))) << "n=" << n;
    }
  }
}

TEST(LaguerreBidiagonal, ShapeAndMoments) {
  RandomStream rs(6);
  const auto b = build_laguerre_bidiagonal(3, 2.5, 2.0, rs);
  EXPECT_EQ(b.rows(), 3);
  EXPECT_EQ(b.cols(), 3);
  EXPECT_EQ(b.subdiagonal().size(), 2u);
  EXPECT_THROW(build_laguerre_bidiagonal(3, 0.5, 2.0, rs), ParameterError);

  // n = 1: single entry chi_{2a}, whose square has mean 2a and variance 4a.
  const double a = 1.3;
  std::vector<double> sq;
  for (int r = 0; r < 20000; ++r) {
    const auto one = build_laguerre_bidiagonal(1, a, 2.0, rs);
    sq.push_back(one.diagonal()[0] * one.diagonal()[0]);
  }
  EXPECT_LE(std::abs(moment_test(sq, 2.0 * a, 4.0 * a)), 3.0);
}

TEST(CMatrix, KOneLayout) {
  RandomStream rs(7);
  std::vector<double> d, e;
  for (int r = 0; r < 20000; ++r) {
    const auto c = build_c_matrix(1, 2.0, rs);
    ASSERT_EQ(c.rows(), 2);
    ASSERT_EQ(c.cols(), 1);
    const auto m = c.dense();
    d.push_back(m(0, 0) * m(0, 0) / 2.0);
    e.push_back(m(1, 0) * m(1, 0) / 2.0);
  }
  // chi_beta and chi_{beta/2} at beta = 2.
  EXPECT_GE(ks_one_sample(d, [](double v) { return oracle::gamma_cdf(1.0, v); }).p_value, kAlpha);
  EXPECT_GE(ks_one_sample(e, [](double v) { return oracle::gamma_cdf(0.5, v); }).p_value, kAlpha);
}

TEST(LowerBidiagonal, RejectsBadShapes) {
  EXPECT_THROW(LowerBidiagonal(3, 1, {1.0}, {1.0, 1.0}), InputError);
  EXPECT_THROW(LowerBidiagonal(2, 2, {1.0}, {1.0}), InputError);
  EXPECT_THROW(LowerBidiagonal(2, 2, {1.0, -1.0}, {1.0}), InputError);
  const LowerBidiagonal b(2, 2, {1.0, 2.0}, {3.0});
  EXPECT_EQ(b.scaled(2.0).dense()(1, 0), 6.0);
}
