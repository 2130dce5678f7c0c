#pragma once

// Verification suites run by `skewbeta verify`. Each returns a report whose
// cases pass or fail independently; statistical cases use significance alpha.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "skewbeta/chain.hpp"
#include "skewbeta/densities.hpp"
#include "skewbeta/ensembles.hpp"
#include "skewbeta/random.hpp"
#include "skewbeta/report.hpp"
#include "skewbeta/spectral.hpp"
#include "skewbeta/stats.hpp"
#include "skewbeta/sturm.hpp"
#include "skewbeta/transform.hpp"

namespace skewbeta {

struct SuiteOptions {
  std::uint64_t seed = 1;
  int reps = 20000;      // replicates per statistical case
  double alpha = 1e-3;   // per-case significance
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identities",   "shuffle",        "cholesky",
                                              "jacobian",     "vandermonde",    "distributions",
                                              "sturm-prufer", "dixon-anderson", "normalization"};
  return names;
}

namespace suites {

inline constexpr double kBetas[] = {0.5, 1.0, 2.0, 4.0};

// The i-th matrix of the deterministic suites: n cycles through 2..12, beta through kBetas.
inline AntisymTridiagonal identity_matrix(const RandomStream& root, int i, int& n, double& beta) {
  n = 2 + i % 11;
  beta = kBetas[i % 4];
  auto rs = root.split(static_cast<std::uint64_t>(i));
  return build_antisym_tridiagonal(n, beta, rs);
}

inline std::string tag(int n, double beta) {
  std::string b = std::to_string(beta);
  b.erase(b.find_last_not_of('0') + 1);
  if (b.back() == '.') b.pop_back();
  return "n=" + std::to_string(n) + ",beta=" + b;
}

// |q| from the SVD of the even/odd coupling block of T_s.
inline std::vector<double> svd_first_components(const AntisymTridiagonal& t) {
  const int n = t.order();
  const Eigen::MatrixXd ts = t.symmetric_dense();
  Eigen::MatrixXd m((n + 1) / 2, n / 2);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = ts(2 * i, 2 * j + 1);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  std::vector<double> q;
  for (int j = 0; j < n / 2; ++j) q.push_back(std::abs(svd.matrixU()(0, j)) / std::numbers::sqrt2);
  return q;
}

template <class Sampler>
std::vector<double> collect(int reps, const RandomStream& root, Sampler&& draw) {
  std::vector<double> out(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r) {
    auto rs = root.split(static_cast<std::uint64_t>(r));
    out[static_cast<std::size_t>(r)] = draw(rs);
  }
  return out;
}

inline double gamma_cdf(double shape, double x) { return x <= 0.0 ? 0.0 : boost::math::gamma_p(shape, x); }

}  // namespace suites

inline VerificationReport suite_identities(const SuiteOptions& opt) {
  VerificationReport rep{"identities", opt.seed, {}};
  const RandomStream root(opt.seed, {1});
  double vander = 0.0, secular = 0.0, qdiff = 0.0, frob = 0.0, moments = 0.0, resolvent = 0.0, roundtrip = 0.0;
  double norm = 0.0, charpoly = 0.0;
  for (int i = 0; i < 200; ++i) {
    int n = 0;
    double beta = 0.0;
    const auto t = suites::identity_matrix(root, i, n, beta);
    const auto sd = positive_spectrum(t);
    auto rs = root.split(1000 + static_cast<std::uint64_t>(i));
    vander = std::max(vander, vandermonde_identity_check(t, sd));
    secular = std::max(secular, secular_check(t, rs));
    resolvent = std::max(resolvent, resolvent_check(t, sd, rs));
    const auto qs = suites::svd_first_components(t);
    for (std::size_t j = 0; j < qs.size(); ++j) qdiff = std::max(qdiff, std::abs(qs[j] - sd.q[j]));
    double sl = 0.0;
    for (double l : sd.lambda) sl += l * l;
    frob = std::max(frob, std::abs(t.sum_squares() - sl) / t.sum_squares());
    for (double r : moment_equations_check(t, sd)) moments = std::max(moments, r);
    norm = std::max(norm, std::abs(sd.normalization() - 1.0));
    for (std::size_t j = 0; j < sd.q.size(); ++j)
      if (sd.q[j] > 1e-3) charpoly = std::max(charpoly, std::abs(first_component_charpoly(t, sd.lambda, j) / sd.q[j] - 1.0));
    const auto again = positive_spectrum(reconstruct_tridiagonal(sd));
    for (std::size_t j = 0; j < sd.q.size(); ++j)
      roundtrip = std::max({roundtrip, std::abs(again.lambda[j] / sd.lambda[j] - 1.0), std::abs(again.q[j] / sd.q[j] - 1.0)});
    if (sd.z) roundtrip = std::max(roundtrip, std::abs(*again.z / *sd.z - 1.0));
  }
  rep.check("vandermonde log-residual", vander, 1e-9);
  rep.check("secular equation residual", secular, 1e-9);
  rep.check("first components vs eigenvectors", qdiff, 1e-8);
  rep.check("frobenius identity", frob, 1e-10);
  rep.check("moment equations", moments, 1e-9);
  rep.check("resolvent expansion", resolvent, 1e-9);
  rep.check("normalization", norm, 1e-10);
  rep.check("charpoly formula vs eigenvector (q > 1e-3)", charpoly, 1e-8);
  rep.check("spectral round trip", roundtrip, 1e-8);
  return rep;
}

inline VerificationReport suite_shuffle(const SuiteOptions& opt) {
  VerificationReport rep{"shuffle", opt.seed, {}};
  const RandomStream root(opt.seed, {2});
  for (int k = 1; k <= 10; ++k) {
    auto rs = root.split(static_cast<std::uint64_t>(k));
    const auto t = build_antisym_tridiagonal(2 * k, 2.0, rs);
    rep.check("conjugation k=" + std::to_string(k), shuffle_conjugation_check(shuffle_bidiagonal(t)), 0.0);
  }
  bool orthogonal = true;
  for (int k = 1; k <= 1024; k *= 2) orthogonal = orthogonal && asps(k).is_orthogonal();
  rep.check("asps orthogonal k<=1024", orthogonal ? 0.0 : 1.0, 0.0);
  // Singular values of B/sqrt(2) are the positive eigenvalues of the mapped tridiagonal.
  double worst = 0.0;
  for (int r = 0; r < 50; ++r) {
    auto rs = root.split(100 + static_cast<std::uint64_t>(r));
    const int k = 1 + r % 6;
    const auto b = build_laguerre_bidiagonal(k, (2 * k - 1) * 2.0 / 4.0, 2.0, rs).scaled(1.0 / std::numbers::sqrt2);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b.dense());
    const auto lambda = positive_eigenvalues(tridiagonal_from_bidiagonal(b));
    for (int j = 0; j < k; ++j)
      worst = std::max(worst, std::abs(lambda[static_cast<std::size_t>(j)] - svd.singularValues()(j)) /
                                  svd.singularValues()(0));
  }
  rep.check("singular values vs eigenvalues", worst, 1e-10);
  return rep;
}

inline VerificationReport suite_cholesky(const SuiteOptions& opt) {
  VerificationReport rep{"cholesky", opt.seed, {}};
  const RandomStream root(opt.seed, {3});
  double worst = 0.0;
  for (int r = 0; r < 200; ++r) {
    auto rs = root.split(static_cast<std::uint64_t>(r));
    const int k = 1 + r % 8;
    const double beta = suites::kBetas[r % 4];
    const auto c = build_c_matrix(k, beta, rs);
    // b_1..b_{2k} read off C, plus an auxiliary b_{2k+1}.
    const auto t = tridiagonal_from_c_matrix(c);
    std::vector<double> bsq;
    for (double b : t.entries()) bsq.push_back(b * b);
    bsq.push_back(sample_gamma((2 * k + 1) * beta / 4.0, rs));
    const auto x = cholesky_reindex(bsq);
    const Eigen::MatrixXd w = c.dense().transpose() * c.dense();
    const Eigen::MatrixXd j = Eigen::MatrixXd::Identity(k, k).rowwise().reverse();
    const Eigen::MatrixXd l = Eigen::LLT<Eigen::MatrixXd>(j * w * j).matrixL();
    const Eigen::MatrixXd bmat = j * l.transpose() * j;
    for (int i = 0; i < k; ++i) {
      const double diag = x[static_cast<std::size_t>(2 * (k - i) - 1)];  // x_{2(k-i)+1}^2
      worst = std::max(worst, std::abs(bmat(i, i) * bmat(i, i) - diag) / diag);
      if (i + 1 < k) {
        const double sub = x[static_cast<std::size_t>(2 * (k - i) - 4)];  // x_{2(k-i)-2}^2
        worst = std::max(worst, std::abs(bmat(i + 1, i) * bmat(i + 1, i) - sub) / sub);
      }
    }
  }
  rep.check("reindex vs direct factor", worst, 1e-12);
  rep.check("k=1 hand case", [] {
    const std::vector<double> in{1.0, 1.0, 1.0};
    const auto x = cholesky_reindex(in);
    return std::abs(x[1] - 2.0) + std::abs(x[0] - 0.5);
  }(), 1e-15);

  // x_{2k+1}^2 against Gamma((2k+1) beta / 4) for C/sqrt(2) input.
  for (int k : {2, 3}) {
    const double beta = 2.0;
    const auto sample = suites::collect(opt.reps, root.split(1000 + static_cast<std::uint64_t>(k)), [&](RandomStream& rs) {
      const auto t = tridiagonal_from_c_matrix(build_c_matrix(k, beta, rs).scaled(1.0 / std::numbers::sqrt2));
      std::vector<double> bsq;
      for (double b : t.entries()) bsq.push_back(b * b);
      bsq.push_back(sample_gamma((2 * k + 1) * beta / 4.0, rs));
      return cholesky_reindex(bsq).back();
    });
    const double shape = (2 * k + 1) * beta / 4.0;
    const auto ks = ks_one_sample(sample, [&](double v) { return suites::gamma_cdf(shape, v); });
    rep.check_p("top pivot law k=" + std::to_string(k), ks.statistic, ks.p_value, opt.alpha);
  }
  return rep;
}

inline VerificationReport suite_jacobian(const SuiteOptions& opt) {
  VerificationReport rep{"jacobian", opt.seed, {}};
  const RandomStream root(opt.seed, {4});
  for (int n = 2; n <= 5; ++n) {
    double worst = 0.0;
    int accepted = 0;
    for (int r = 0; accepted < 50 && r < 500; ++r) {
      auto rs = root.split(static_cast<std::uint64_t>(100 * n + r));
      const auto t = build_antisym_tridiagonal(n, 2.0, rs);
      const auto sd = positive_spectrum(t);
      double numeric = 0.0;
      try {
        numeric = jacobian_numeric(sd);
      } catch (const AccuracyError&) {
        continue;  // rejected by the Richardson check
      }
      const double target = jacobian_analytic(t, sd) / jacobian_chart_factor(sd);
      worst = std::max(worst, std::abs(numeric - target) / target);
      ++accepted;
    }
    if (accepted < 50)
      rep.fail("n=" + std::to_string(n) + " (too many rejected points)", 1e-5);
    else
      rep.check("n=" + std::to_string(n), worst, 1e-5);
  }
  return rep;
}

inline VerificationReport suite_vandermonde(const SuiteOptions& opt) {
  VerificationReport rep{"vandermonde", opt.seed, {}};
  const RandomStream root(opt.seed, {5});
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    int n = 0;
    double beta = 0.0;
    const auto t = suites::identity_matrix(root, i, n, beta);
    worst = std::max(worst, vandermonde_identity_check(t, positive_spectrum(t)));
  }
  rep.check("log-residual over 200 matrices", worst, 1e-9);
  return rep;
}

inline VerificationReport suite_distributions(const SuiteOptions& opt) {
  VerificationReport rep{"distributions", opt.seed, {}};
  const RandomStream root(opt.seed, {6});
  const int reps = opt.reps;

  struct Config {
    int n;
    double beta;
  };
  std::uint64_t id = 0;
  for (const Config c : {Config{4, 2.0}, Config{5, 2.0}, Config{4, 1.0}, Config{5, 4.0}}) {
    using Draw = std::function<std::vector<double>(RandomStream&)>;
    const std::vector<std::pair<std::string, Draw>> samplers{
        {"direct", [&](RandomStream& rs) { return positive_eigenvalues(build_antisym_tridiagonal(c.n, c.beta, rs)); }},
        {"chain", [&](RandomStream& rs) { return chain_sample(c.n, c.beta, rs); }},
        {"laguerre-map", [&](RandomStream& rs) { return positive_eigenvalues(laguerre_map_sample(c.n, c.beta, rs)); }}};
    std::vector<std::vector<double>> top(3), bottom(3);
    for (std::size_t s = 0; s < samplers.size(); ++s) {
      const auto stream = root.split(++id);
      for (int r = 0; r < reps; ++r) {
        auto rs = stream.split(static_cast<std::uint64_t>(r));
        const auto l = samplers[s].second(rs);
        top[s].push_back(l.front());
        bottom[s].push_back(l.back());
      }
    }
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b) {
        const std::string pair = samplers[a].first + "~" + samplers[b].first + "," + suites::tag(c.n, c.beta);
        const auto k1 = ks_two_sample(top[a], top[b]);
        rep.check_p("lambda_max " + pair, k1.statistic, k1.p_value, opt.alpha);
        const auto k2 = ks_two_sample(bottom[a], bottom[b]);
        rep.check_p("lambda_min " + pair, k2.statistic, k2.p_value, opt.alpha);
      }
  }

  // n = 2: lambda^2 ~ Gamma(beta/4, 1).
  for (double beta : {1.0, 2.0, 4.0}) {
    const auto x = suites::collect(reps, root.split(++id), [&](RandomStream& rs) {
      return positive_eigenvalues(build_antisym_tridiagonal(2, beta, rs)).front();
    });
    const auto ks = ks_one_sample(x, [&](double v) { return suites::gamma_cdf(beta / 4.0, v * v); });
    rep.check_p("n=2 marginal " + suites::tag(2, beta), ks.statistic, ks.p_value, opt.alpha);
  }

  // n = 3, beta = 2: CDF of the density by quadrature.
  {
    const auto x = suites::collect(reps, root.split(++id), [&](RandomStream& rs) {
      return positive_eigenvalues(build_antisym_tridiagonal(3, 2.0, rs)).front();
    });
    const auto cdf = TabulatedCdf::from_density(
        [](double l) {
          const double v[1] = {l};
          return logpdf_positive_eigenvalues(v, 3, 2.0).density();
        },
        0.0, 8.0, 400);
    const auto ks = ks_one_sample(x, [&](double v) { return cdf(v); });
    rep.check_p("n=3 lambda_max vs quadrature cdf", ks.statistic, ks.p_value, opt.alpha);
  }

  // First-component laws: 2 q_1^2 ~ U(0,1) (n=4) and Beta(1, 1/2) (n=3) at beta = 2.
  {
    const auto u = suites::collect(reps, root.split(++id), [&](RandomStream& rs) {
      const auto q = positive_spectrum(build_antisym_tridiagonal(4, 2.0, rs)).q.front();
      return 2.0 * q * q;
    });
    const auto k1 = ks_one_sample(u, [](double v) { return std::clamp(v, 0.0, 1.0); });
    rep.check_p("n=4 2q_1^2 uniform", k1.statistic, k1.p_value, opt.alpha);
    const auto w = suites::collect(reps, root.split(++id), [&](RandomStream& rs) {
      const auto q = positive_spectrum(build_antisym_tridiagonal(3, 2.0, rs)).q.front();
      return 2.0 * q * q;
    });
    const auto k2 = ks_one_sample(w, [](double v) { return v <= 0 ? 0.0 : v >= 1 ? 1.0 : boost::math::ibeta(1.0, 0.5, v); });
    rep.check_p("n=3 2q_1^2 beta(1,1/2)", k2.statistic, k2.p_value, opt.alpha);
  }

  // Householder reduction of the dense GUE lands on the tridiagonal model at beta = 2.
  {
    const int n = 8;
    const int hreps = std::min(reps, 10000);
    std::vector<std::vector<double>> bsq(static_cast<std::size_t>(n - 1));
    const auto stream = root.split(++id);
    for (int r = 0; r < hreps; ++r) {
      auto rs = stream.split(static_cast<std::uint64_t>(r));
      const auto t = householder_reduce(build_dense_antisym_gue(n, rs));
      for (int k = 1; k < n; ++k) bsq[static_cast<std::size_t>(k - 1)].push_back(t.b(k) * t.b(k));
    }
    for (int k = 1; k < n; ++k) {
      const auto ks = ks_one_sample(bsq[static_cast<std::size_t>(k - 1)],
                                    [&](double v) { return suites::gamma_cdf(k / 2.0, v); });
      rep.check_p("householder b_" + std::to_string(k) + "^2", ks.statistic, ks.p_value, opt.alpha);
    }
  }

  // Entries implied by the chain spectrum with Dirichlet weights, and entries
  // produced by the Laguerre map: b_j^2 ~ Gamma(j beta / 4, 1).
  {
    const int n = 5;
    const double beta = 2.0;
    std::vector<std::vector<double>> chain_b(n - 1), map_b(n - 1);
    const auto s1 = root.split(++id);
    const auto s2 = root.split(++id);
    for (int r = 0; r < reps; ++r) {
      auto r1 = s1.split(static_cast<std::uint64_t>(r));
      auto r2 = s2.split(static_cast<std::uint64_t>(r));
      const auto tc = reconstruct_tridiagonal(chain_spectral_sample(n, beta, r1));
      const auto tm = laguerre_map_sample(n + (r % 2 == 0 ? 0 : -1), beta, r2);
      for (int j = 1; j < n; ++j) chain_b[static_cast<std::size_t>(j - 1)].push_back(tc.b(j) * tc.b(j));
      for (int j = 1; j < tm.order(); ++j) map_b[static_cast<std::size_t>(j - 1)].push_back(tm.b(j) * tm.b(j));
    }
    for (int j = 1; j < n; ++j) {
      auto cdf = [&](double v) { return suites::gamma_cdf(j * beta / 4.0, v); };
      const auto k1 = ks_one_sample(chain_b[static_cast<std::size_t>(j - 1)], cdf);
      rep.check_p("chain recurrence b_" + std::to_string(j) + "^2", k1.statistic, k1.p_value, opt.alpha);
      const auto k2 = ks_one_sample(map_b[static_cast<std::size_t>(j - 1)], cdf);
      rep.check_p("laguerre-map b_" + std::to_string(j) + "^2", k2.statistic, k2.p_value, opt.alpha);
    }
  }

  // E[sum lambda^2] = beta n (n-1) / 8, which is also the variance.
  for (const Config c : {Config{4, 2.0}, Config{7, 1.0}}) {
    const auto s = suites::collect(reps, root.split(++id), [&](RandomStream& rs) {
      double v = 0.0;
      for (double l : positive_eigenvalues(build_antisym_tridiagonal(c.n, c.beta, rs))) v += l * l;
      return v;
    });
    const double target = c.beta * c.n * (c.n - 1) / 8.0;
    rep.check("sum lambda^2 mean |z| " + suites::tag(c.n, c.beta), std::abs(moment_test(s, target, target)), 3.0);
  }
  return rep;
}

inline VerificationReport suite_sturm_prufer(const SuiteOptions& opt) {
  VerificationReport rep{"sturm-prufer", opt.seed, {}};
  const RandomStream root(opt.seed, {7});
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    auto rs = root.split(static_cast<std::uint64_t>(i));
    const int n = 2 + i % 11;
    const auto t = build_antisym_tridiagonal(n, suites::kBetas[i % 4], rs);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.symmetric_dense(), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd positive = es.eigenvalues().tail(n / 2);  // ascending order
    const double mu = 1.2 * positive.maxCoeff() * rs.uniform_open();
    const auto expected = (positive.array() <= mu).count();
    mismatches += count_positive_leq(t, mu) != expected;
  }
  rep.check("counts vs eigensolver (1000 pairs)", mismatches, 0.0);

  double anchor = 0.0;
  int nonmonotone = 0;
  double asymptote = 0.0;
  for (int i = 0; i < 20; ++i) {
    auto rs = root.split(5000 + static_cast<std::uint64_t>(i));
    const int n = 2 + i % 11;
    const auto t = build_antisym_tridiagonal(n, suites::kBetas[i % 4], rs);
    const double lmax = positive_eigenvalues(t).front();
    std::vector<double> grid(200);
    for (int g = 0; g < 200; ++g) grid[static_cast<std::size_t>(g)] = 1.5 * lmax * g / 199.0;
    const auto ph = prufer_phases(t, grid);
    for (int j = 2; j <= n + 1; ++j) {
      const double expect = j % 2 == 0 ? std::numbers::pi / 2 : 0.0;
      anchor = std::max(anchor, std::abs(ph.front().theta[static_cast<std::size_t>(j - 2)] - expect));
    }
    for (std::size_t g = 1; g < ph.size(); ++g)
      for (std::size_t j = 0; j < ph[g].theta.size(); ++j) nonmonotone += !(ph[g].theta[j] < ph[g - 1].theta[j]);
    const double far = 100.0 * std::max(1.0, lmax * lmax);
    const std::vector<double> probe{0.0, far};
    const auto end = prufer_phases(t, probe).back();
    for (int j = 2; j <= n + 1; ++j)
      asymptote = std::max(asymptote, std::abs(end.theta[static_cast<std::size_t>(j - 2)] - prufer_asymptote(j)));
  }
  rep.check("phases at mu=0", anchor, 1e-9);
  rep.check("strict decrease on 200-point grids", nonmonotone, 0.0);
  rep.check("large-mu asymptote", asymptote, 0.2);
  return rep;
}

inline VerificationReport suite_dixon_anderson(const SuiteOptions& opt) {
  VerificationReport rep{"dixon-anderson", opt.seed, {}};
  struct Case {
    std::string name;
    std::vector<double> a;
    std::vector<double> s;
  };
  const std::vector<Case> cases{
      {"arcsine", {1.0, -1.0}, {0.5, 0.5}},
      {"m=1 smooth", {3.0, 0.5}, {2.0, 1.5}},
      {"m=1 singular", {2.0, 0.0}, {0.3, 0.7}},
      {"m=2 uniform exponents", {2.0, 1.0, 0.0}, {1.0, 1.0, 1.0}},
      {"m=2 half exponents", {3.0, 1.0, -0.5}, {0.5, 0.5, 0.5}},
      {"m=2 mixed", {4.0, 1.5, 0.25}, {1.5, 0.75, 2.0}},
  };
  for (const auto& c : cases) {
    try {
      const auto r = dixon_anderson_check(c.a, c.s);
      rep.check(c.name, r.relative_error(), 1e-6);
    } catch (const AccuracyError&) {
      rep.fail(c.name, 1e-6);
    }
  }
  const auto arcsine = dixon_anderson_check(std::vector<double>{1.0, -1.0}, std::vector<double>{0.5, 0.5});
  rep.check("arcsine equals pi", std::abs(arcsine.lhs - std::numbers::pi) / std::numbers::pi, 1e-6);
  return rep;
}

inline VerificationReport suite_normalization(const SuiteOptions& opt) {
  VerificationReport rep{"normalization", opt.seed, {}};
  for (int n = 2; n <= 4; ++n)
    for (double beta : {1.0, 2.0, 4.0})
      rep.check("total mass " + suites::tag(n, beta), std::abs(positive_eigenvalue_total_mass(n, beta) - 1.0), 1e-4);
  double selberg = 0.0;
  double recurrence = 0.0;
  for (double beta : suites::kBetas)
    for (int m = 1; m <= 20; ++m) {
      const auto r = selberg_consistency_check(beta, m);
      selberg = std::max({selberg, r.even, r.odd});
      recurrence = std::max({recurrence, NormalizationTable::global().recurrence_residual(2 * m, beta),
                             NormalizationTable::global().recurrence_residual(2 * m + 1, beta)});
    }
  rep.check("selberg identity m<=20", selberg, 1e-12);
  rep.check("step recurrence n<=41", recurrence, 1e-10);
  return rep;
}

/// Runs one suite by name, or every suite for "all". Returns nullopt for an unknown name.
inline std::optional<VerificationReport> run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "all") {
    VerificationReport all{"all", opt.seed, {}};
    for (const auto& s : suite_names()) all.append(*run_suite(s, opt));
    return all;
  }
  if (name == "identities") return suite_identities(opt);
  if (name == "shuffle") return suite_shuffle(opt);
  if (name == "cholesky") return suite_cholesky(opt);
  if (name == "jacobian") return suite_jacobian(opt);
  if (name == "vandermonde") return suite_vandermonde(opt);
  if (name == "distributions") return suite_distributions(opt);
  if (name == "sturm-prufer") return suite_sturm_prufer(opt);
  if (name == "dixon-anderson") return suite_dixon_anderson(opt);
  if (name == "normalization") return suite_normalization(opt);
  return std::nullopt;
}

}  // namespace skewbeta
