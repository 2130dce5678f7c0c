#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "skewbeta/sturm.hpp"

using namespace skewbeta;

namespace {

constexpr double kBetas[] = {0.5, 1.0, 2.0, 4.0};

AntisymTridiagonal random_matrix(std::uint64_t seed, int i, int n, double beta) {
  auto rs = RandomStream(seed).split(static_cast<std::uint64_t>(i));
  return build_antisym_tridiagonal(n, beta, rs);
}

}  // namespace

TEST(SturmCount, MatchesEigensolver) {
  RandomStream rs(1, {9});
  for (int i = 0; i < 400; ++i) {
    const int n = 2 + i % 11;
    const auto t = random_matrix(1, i, n, kBetas[i % 4]);
    const double top = oracle::positive_eigenvalues(t).front();
    const double mu = 1.3 * top * rs.uniform_open();
    EXPECT_EQ(count_positive_leq(t, mu), oracle::count_positive_leq(t, mu)) << "n=" << n << " mu=" << mu;
  }
}

TEST(SturmCount, ExtremesAndErrors) {
  const auto t = random_matrix(2, 0, 7, 2.0);
  const double top = oracle::positive_eigenvalues(t).front();
  EXPECT_EQ(count_positive_leq(t, 1e-300), 0);
  EXPECT_EQ(count_positive_leq(t, 2.0 * top), 3);
  EXPECT_THROW(count_positive_leq(t, 0.0), ParameterError);
  EXPECT_THROW(count_positive_leq(t, -1.0), ParameterError);
}

TEST(SturmCount, SurvivesSubmatrixEigenvalue) {
  // b = (1, 1, 1): the trailing 2x2 block has eigenvalue 1, so P_2(1) = 0.
  const AntisymTridiagonal t({1.0, 1.0, 1.0});
  EXPECT_FALSE(sturm_state(t, 1.0).has_value());
  EXPECT_EQ(count_positive_leq(t, 1.0), oracle::count_positive_leq(t, 1.0));
}

TEST(SturmState, RatiosAreCharpolyQuotients) {
  const auto t = random_matrix(3, 0, 6, 1.0);
  const double mu = 0.77;
  const auto s = sturm_state(t, mu);
  ASSERT_TRUE(s.has_value());
  const auto seq = charpoly_sequence(t, mu);
  for (int i = 1; i <= 6; ++i) EXPECT_NEAR(s->r[static_cast<std::size_t>(i - 1)], -seq.ratio(i, i - 1), 1e-12);
}

TEST(ShootingVector, ScaledCharacteristicPolynomials) {
  const auto t = random_matrix(4, 0, 5, 2.0);
  const double mu = 0.9;
  const double x1 = 1.5;
  const auto sv = shooting_vector(t, mu, x1);
  ASSERT_EQ(sv.x.size(), 6u);
  const auto seq = charpoly_sequence(t, mu);
  double prod = 1.0;
  for (int i = 1; i <= 5; ++i) {
    prod *= i < 5 ? t.b(i) : 1.0;
    EXPECT_NEAR(sv.x[static_cast<std::size_t>(i)] * prod, x1 * seq.value(i), 1e-12 * std::max(1.0, std::abs(seq.value(i))));
  }
  EXPECT_FALSE(sv.singular_index.has_value());
  EXPECT_THROW(shooting_vector(t, mu, 0.0), ParameterError);
}

TEST(ShootingVector, LastComponentVanishesAtEigenvalues) {
  const auto t = random_matrix(5, 0, 6, 2.0);
  for (double l : positive_eigenvalues(t)) {
    const auto sv = shooting_vector(t, l, 1.0);
    double scale = 0.0;
    for (double v : sv.x) scale = std::max(scale, std::abs(v));
    EXPECT_LE(std::abs(sv.x.back()), 1e-10 * scale * std::max(1.0, l));
  }
  // mu = 0 for an even order: x_2 = 0 is reported.
  EXPECT_EQ(shooting_vector(t, 0.0, 1.0).singular_index, 2);
}

TEST(Prufer, AnchorsAtZero) {
  for (int n = 2; n <= 9; ++n) {
    const auto t = random_matrix(6, n, n, 1.0);
    const std::vector<double> grid{0.0};
    const auto ph = prufer_phases(t, grid);
    for (int i = 2; i <= n + 1; ++i)
      EXPECT_EQ(ph[0].theta[static_cast<std::size_t>(i - 2)], i % 2 == 0 ? std::numbers::pi / 2 : 0.0);
  }
}

TEST(Prufer, CotangentMatchesDefinition) {
  const auto t = random_matrix(7, 0, 6, 2.0);
  const std::vector<double> grid{0.0, 0.3, 1.1, 2.7};
  const auto ph = prufer_phases(t, grid);
  for (std::size_t g = 1; g < grid.size(); ++g) {
    const auto seq = charpoly_sequence(t, grid[g]);
    for (int i = 2; i <= 7; ++i) {
      const double bb = i - 1 < 6 ? t.b(i - 1) * t.b(i - 1) : 1.0;
      const double cot = seq.value(i - 1) / (bb * seq.value(i - 2));
      const double th = ph[g].theta[static_cast<std::size_t>(i - 2)];
      EXPECT_NEAR(std::cos(th) / std::sin(th), cot, 1e-9 * std::max(1.0, std::abs(cot)));
    }
  }
}

TEST(Prufer, StrictlyDecreasingOnGrid) {
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 11;
    const auto t = random_matrix(8, i, n, kBetas[i % 4]);
    const double top = positive_eigenvalues(t).front();
    std::vector<double> grid(200);
    for (int g = 0; g < 200; ++g) grid[static_cast<std::size_t>(g)] = 1.5 * top * g / 199.0;
    const auto ph = prufer_phases(t, grid);
    for (std::size_t g = 1; g < ph.size(); ++g)
      for (std::size_t j = 0; j < ph[g].theta.size(); ++j) ASSERT_LT(ph[g].theta[j], ph[g - 1].theta[j]);
  }
}

TEST(Prufer, CrossesAtEigenvalues) {
  // At the k-th positive zero of P_n, theta_{n+1} = pi/2 - k pi.
  for (int n : {2, 3, 6, 9}) {
    const auto t = random_matrix(9, n, n, 2.0);
    auto lambda = positive_eigenvalues(t);
    std::reverse(lambda.begin(), lambda.end());
    const auto ph = prufer_phases(t, lambda);
    for (std::size_t k = 0; k < lambda.size(); ++k)
      EXPECT_NEAR(ph[k].theta.back(), std::numbers::pi / 2 - static_cast<double>(k + 1) * std::numbers::pi, 1e-6)
          << "n=" << n;
  }
}

TEST(Prufer, LargeMuAsymptote) {
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 11;
    const auto t = random_matrix(10, i, n, kBetas[i % 4]);
    const double top = positive_eigenvalues(t).front();
    const std::vector<double> grid{0.0, 100.0 * std::max(1.0, top * top)};
    const auto end = prufer_phases(t, grid).back();
    for (int j = 2; j <= n + 1; ++j)
      EXPECT_NEAR(end.theta[static_cast<std::size_t>(j - 2)], prufer_asymptote(j), 0.2) << "n=" << n << " j=" << j;
  }
  EXPECT_EQ(prufer_asymptote(2), 0.0);
  EXPECT_EQ(prufer_asymptote(3), -std::numbers::pi);
  EXPECT_EQ(prufer_asymptote(4), -std::numbers::pi);
}

TEST(Prufer, RejectsBadGrids) {
  const auto t = random_matrix(11, 0, 4, 2.0);
  const std::vector<double> negative{-1.0, 0.0};
  const std::vector<double> repeated{0.0, 1.0, 1.0};
  EXPECT_THROW(prufer_phases(t, negative), ParameterError);
  EXPECT_THROW(prufer_phases(t, repeated), ParameterError);
}
