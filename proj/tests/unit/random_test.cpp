#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "skewbeta/random.hpp"
#include "skewbeta/stats.hpp"

using skewbeta::RandomStream;

namespace {

constexpr double kAlpha = 1e-3;

template <class F>
std::vector<double> draws(int count, std::uint64_t seed, F&& f) {
  RandomStream rs(seed, {42});
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& v : out) v = f(rs);
  return out;
}

}  // namespace

TEST(RandomStream, SameSeedAndKeyGiveSameSequence) {
  RandomStream a(7, {1, 2});
  RandomStream b(7, {1, 2});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(RandomStream, DifferentKeysDiffer) {
  RandomStream a(7, {1});
  RandomStream b(7, {2});
  RandomStream c(8, {1});
  EXPECT_NE(a.next(), b.next());
  RandomStream a2(7, {1});
  EXPECT_NE(a2.next(), c.next());
}

TEST(RandomStream, SplitDoesNotAdvanceParent) {
  RandomStream a(11);
  RandomStream b(11);
  auto child = a.split(3);
  (void)child.next();
  EXPECT_EQ(a.next(), b.next());
  EXPECT_EQ(child.key(), (std::vector<std::uint64_t>{3}));
  auto again = b.split(3);
  auto fresh = RandomStream(11).split(3);
  EXPECT_EQ(again.next(), fresh.next());
}

TEST(RandomStream, UniformIsOpen) {
  RandomStream rs(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rs.uniform_open();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Samplers, RejectBadParameters) {
  RandomStream rs(1);
  EXPECT_THROW(skewbeta::sample_gamma(0.0, rs), skewbeta::ParameterError);
  EXPECT_THROW(skewbeta::sample_gamma(-1.0, rs), skewbeta::ParameterError);
  EXPECT_THROW(skewbeta::sample_chi_tilde(0.0, rs), skewbeta::ParameterError);
  EXPECT_THROW(skewbeta::sample_normal(0.0, 0.0, rs), skewbeta::ParameterError);
  EXPECT_THROW(skewbeta::sample_beta(1.0, 0.0, rs), skewbeta::ParameterError);
  const std::vector<double> bad{1.0, -2.0};
  EXPECT_THROW(skewbeta::sample_dirichlet(bad, rs), skewbeta::ParameterError);
}

class GammaLaw : public ::testing::TestWithParam<double> {};

TEST_P(GammaLaw, MatchesRegularizedIncompleteGamma) {
  const double shape = GetParam();
  const auto x = draws(20000, 3, [&](RandomStream& rs) { return skewbeta::sample_gamma(shape, rs); });
  for (double v : x) ASSERT_GT(v, 0.0);
  const auto ks = skewbeta::ks_one_sample(x, [&](double v) { return oracle::gamma_cdf(shape, v); });
  EXPECT_GE(ks.p_value, kAlpha) << "shape " << shape << " D=" << ks.statistic;
}

INSTANTIATE_TEST_SUITE_P(Shapes, GammaLaw, ::testing::Values(0.05, 0.125, 0.5, 1.0, 1.5, 3.7, 25.0));

TEST(Samplers, ChiTildeSquaredIsGammaHalfK) {
  for (double k : {0.5, 1.0, 3.0}) {
    const auto x = draws(20000, 4, [&](RandomStream& rs) {
      const double c = skewbeta::sample_chi_tilde(k, rs);
      return c * c;
    });
    const auto ks = skewbeta::ks_one_sample(x, [&](double v) { return oracle::gamma_cdf(k / 2.0, v); });
    EXPECT_GE(ks.p_value, kAlpha) << "k " << k;
  }
}

TEST(Samplers, StandardChiIsSqrtTwoTimesChiTilde) {
  // chi_k^2 / 2 ~ Gamma(k/2, 1).
  const double k = 3.0;
  const auto x = draws(20000, 5, [&](RandomStream& rs) {
    const double c = skewbeta::sample_standard_chi(k, rs);
    return c * c / 2.0;
  });
  const auto ks = skewbeta::ks_one_sample(x, [&](double v) { return oracle::gamma_cdf(k / 2.0, v); });
  EXPECT_GE(ks.p_value, kAlpha);
}

TEST(Samplers, NormalVariance) {
  const auto x = draws(20000, 6, [](RandomStream& rs) { return skewbeta::sample_normal(1.0, 0.5, rs); });
  // sigma sqrt(2) = 1 for variance 1/2.
  const auto ks = skewbeta::ks_one_sample(x, [](double v) { return 0.5 * std::erfc(-(v - 1.0)); });
  EXPECT_GE(ks.p_value, kAlpha);
}

TEST(Samplers, BetaMatchesIncompleteBeta) {
  const auto x = draws(20000, 7, [](RandomStream& rs) { return skewbeta::sample_beta(1.0, 0.5, rs); });
  const auto ks = skewbeta::ks_one_sample(x, [](double v) { return oracle::beta_cdf(1.0, 0.5, v); });
  EXPECT_GE(ks.p_value, kAlpha);
}

TEST(Samplers, DirichletSumsToOneWithBetaMarginals) {
  const std::vector<double> s{0.5, 1.0, 0.25};
  std::vector<double> first;
  RandomStream rs(8);
  for (int i = 0; i < 20000; ++i) {
    const auto d = skewbeta::sample_dirichlet(s, rs);
    ASSERT_EQ(d.size(), 3u);
    ASSERT_NEAR(std::accumulate(d.begin(), d.end(), 0.0), 1.0, 1e-14);
    for (double v : d) ASSERT_GT(v, 0.0);
    first.push_back(d[0]);
  }
  const auto ks = skewbeta::ks_one_sample(first, [](double v) { return oracle::beta_cdf(0.5, 1.25, v); });
  EXPECT_GE(ks.p_value, kAlpha);
}
