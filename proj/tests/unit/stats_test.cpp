#include <cmath>
#include <cstdlib>
#include <vector>

#include <gtest/gtest.h>

#include "skewbeta/random.hpp"
#include "skewbeta/report.hpp"
#include "skewbeta/stats.hpp"

using namespace skewbeta;

namespace {

using Vec = std::vector<double>;

Vec uniforms(std::uint64_t seed, int count, double lo = 0.0, double hi = 1.0) {
  RandomStream rs(seed);
  Vec v;
  for (int i = 0; i < count; ++i) v.push_back(lo + (hi - lo) * rs.uniform_open());
  return v;
}

double uniform_cdf(double x) { return std::clamp(x, 0.0, 1.0); }

// Sets SKEWBETA_TOL_OVERRIDE for the lifetime of the guard.
struct OverrideGuard {
  explicit OverrideGuard(const char* v) { ::setenv("SKEWBETA_TOL_OVERRIDE", v, 1); }
  ~OverrideGuard() { ::unsetenv("SKEWBETA_TOL_OVERRIDE"); }
};

}  // namespace

TEST(KolmogorovSmirnov, IdenticalSamples) {
  const auto x = uniforms(1, 500);
  const auto r = ks_two_sample(x, x);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(KolmogorovSmirnov, HandStatistic) {
  // Sample {0.5} against U(0, 1): D = 0.5.
  EXPECT_DOUBLE_EQ(ks_one_sample(Vec{0.5}, uniform_cdf).statistic, 0.5);
  // {1, 2} vs {3, 4}: D = 1.
  EXPECT_DOUBLE_EQ(ks_two_sample(Vec{1.0, 2.0}, Vec{3.0, 4.0}).statistic, 1.0);
  EXPECT_THROW(ks_one_sample(Vec{}, uniform_cdf), InputError);
  EXPECT_THROW(ks_two_sample(Vec{}, Vec{1.0}), InputError);
}

TEST(KolmogorovSmirnov, CalibratedUnderNull) {
  const auto x = uniforms(2, 100000);
  EXPECT_GE(ks_one_sample(x, uniform_cdf).p_value, 1e-3);
  const auto y = uniforms(3, 100000);
  EXPECT_GE(ks_two_sample(x, y).p_value, 1e-3);
}

TEST(KolmogorovSmirnov, NullPValuesRoughlyUniform) {
  // Fraction of 400 null tests with p < 0.1 should be near 0.1.
  int small = 0;
  for (int i = 0; i < 400; ++i) small += ks_one_sample(uniforms(100 + static_cast<std::uint64_t>(i), 400), uniform_cdf).p_value < 0.1;
  EXPECT_NEAR(small / 400.0, 0.1, 0.05);
}

TEST(KolmogorovSmirnov, DetectsShift) {
  const auto x = uniforms(4, 100000);
  const auto y = uniforms(5, 100000, 0.5, 1.5);
  EXPECT_LT(ks_two_sample(x, y).p_value, 1e-6);
  EXPECT_LT(ks_one_sample(y, uniform_cdf).p_value, 1e-6);
}

TEST(KolmogorovSmirnov, TailValues) {
  EXPECT_EQ(kolmogorov_tail(0.0), 1.0);
  EXPECT_NEAR(kolmogorov_tail(1.36), 0.0493, 5e-4);
  EXPECT_NEAR(kolmogorov_tail(1.63), 0.0098, 2e-4);
}

TEST(MomentTest, ZScores) {
  const Vec constant(400, 2.0);
  EXPECT_EQ(moment_test(constant, 2.0, 1.0), 0.0);
  // A mean offset of 0.1 with unit variance gives z = 0.1 sqrt(N).
  const Vec shifted(10000, 0.1);
  EXPECT_NEAR(moment_test(shifted, 0.0, 1.0), 10.0, 1e-10);
  const Vec more(40000, 0.1);
  EXPECT_NEAR(moment_test(more, 0.0, 1.0), 20.0, 1e-10);
  EXPECT_THROW(moment_test(Vec(10, 0.0), 0.0, 1.0), InputError);
  EXPECT_THROW(moment_test(constant, 0.0, 0.0), ParameterError);
}

TEST(TabulatedCdf, ExponentialDensity) {
  const auto cdf = TabulatedCdf::from_density([](double x) { return std::exp(-x); }, 0.0, 40.0, 4000);
  EXPECT_NEAR(cdf.total(), 1.0, 1e-12);
  for (double x : {0.1, 1.0, 3.3}) EXPECT_NEAR(cdf(x), 1.0 - std::exp(-x), 1e-5);
  EXPECT_EQ(cdf(-1.0), 0.0);
  EXPECT_THROW(TabulatedCdf::from_density([](double) { return 1.0; }, 1.0, 0.0, 10), ParameterError);
}

TEST(Report, ChecksAndJson) {
  VerificationReport r;
  r.suite = "demo";
  r.seed = 7;
  r.check("small", 1e-13, 1e-12);
  r.check("large", 1e-3, 1e-12);
  r.check_p("ks", 0.01, 0.5, 1e-3);
  r.fail("missing", 1.0);
  EXPECT_EQ(r.failures(), 2u);
  EXPECT_FALSE(r.passed());
  const auto j = r.to_json();
  EXPECT_EQ(j["suite"], "demo");
  EXPECT_EQ(j["failures"], 2);
  EXPECT_EQ(j["cases"][0]["status"], "pass");
  EXPECT_EQ(j["cases"][1]["status"], "fail");
  EXPECT_TRUE(j["cases"][3]["statistic"].is_null());
  VerificationReport all;
  all.append(r);
  EXPECT_EQ(all.cases[0].name, "demo/small");
}

TEST(Report, ToleranceOverride) {
  {
    OverrideGuard g("0");
    VerificationReport r;
    r.check("exact", 0.0, 1e-12);
    r.check("tiny", 1e-20, 1e-12);
    r.check_p("ks", 0.0, 1.0, 1e-3);
    EXPECT_EQ(r.cases[0].status, CaseStatus::Pass);
    EXPECT_EQ(r.cases[1].status, CaseStatus::Fail);
    EXPECT_EQ(r.cases[2].status, CaseStatus::Fail);
  }
  {
    OverrideGuard g("1e6");
    VerificationReport r;
    r.check("loose", 1e-7, 1e-12);
    EXPECT_TRUE(r.passed());
  }
  {
    OverrideGuard g("garbage");
    EXPECT_EQ(tolerance_factor(), 0.0);
  }
  EXPECT_EQ(tolerance_factor(), 1.0);
}
