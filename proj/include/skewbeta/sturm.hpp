#pragma once

// Sturm counting, shooting vectors and Prufer phases of the reduced
// tridiagonal model, all driven by the ratios P_i(mu) / P_{i-1}(mu).

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "skewbeta/ensembles.hpp"
#include "skewbeta/errors.hpp"
#include "skewbeta/spectral.hpp"

namespace skewbeta {

/// r_i = -P_i(mu) / P_{i-1}(mu), i = 1..n.
struct SturmState {
  double mu = 0.0;
  std::vector<double> r;
};

/// Returns std::nullopt when mu is an eigenvalue of one of the trailing blocks.
inline std::optional<SturmState> sturm_state(const AntisymTridiagonal& t, double mu) {
  const int n = t.order();
  SturmState s;
  s.mu = mu;
  s.r.resize(static_cast<std::size_t>(n));
  double d = mu;  // P_1 / P_0
  for (int i = 1; i <= n; ++i) {
    if (d == 0.0 || !std::isfinite(d)) return std::nullopt;
    s.r[static_cast<std::size_t>(i - 1)] = -d;
    if (i < n) {
      const double bi = t.b(i);
      d = mu - bi * bi / d;
    }
  }
  return s;
}

/// N+(mu): number of positive eigenvalues of iT that are <= mu, counted as
/// (#negative r_i, i even) - (#positive r_i, i odd). When mu hits an
/// eigenvalue of a trailing block it is nudged upward by 1e-12 of the
/// spectral scale.
inline int count_positive_leq(const AntisymTridiagonal& t, double mu) {
  if (!(mu > 0.0)) throw ParameterError("count_positive_leq: mu must be positive");
  const double jitter = 1e-12 * detail::gershgorin_bound(t.entries());
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto s = sturm_state(t, mu + attempt * jitter);
    if (!s) continue;
    int count = 0;
    for (std::size_t k = 0; k < s->r.size(); ++k) {
      const bool even = (k + 1) % 2 == 0;
      if (even && s->r[k] < 0.0) ++count;
      if (!even && s->r[k] > 0.0) --count;
    }
    return count;
  }
  throw AccuracyError("count_positive_leq: could not move off the submatrix eigenvalues");
}

/// Shooting vector of T_s at mu: x_1 is the bottom component, x_2..x_n solve
/// every row of (T_s - mu I) x = 0 except the first, and x_{n+1} is the first
/// component of (mu I - T_s) x (equivalently the recurrence with b_n := 1).
struct ShootingVector {
  double mu = 0.0;
  std::vector<double> x;                 // x[0] = x_1, ..., x[n] = x_{n+1}
  std::optional<int> singular_index;     // first i (1-based) with x_i == 0, i <= n
};

inline ShootingVector shooting_vector(const AntisymTridiagonal& t, double mu, double x1) {
  if (x1 == 0.0) throw ParameterError("shooting_vector: x_1 must be nonzero");
  const int n = t.order();
  ShootingVector sv;
  sv.mu = mu;
  sv.x.resize(static_cast<std::size_t>(n + 1));
  sv.x[0] = x1;
  sv.x[1] = mu * x1 / t.b(1);
  for (int i = 2; i <= n; ++i) {
    const double bi = i < n ? t.b(i) : 1.0;
    sv.x[static_cast<std::size_t>(i)] =
        (mu * sv.x[static_cast<std::size_t>(i - 1)] - t.b(i - 1) * sv.x[static_cast<std::size_t>(i - 2)]) / bi;
  }
  for (int i = 1; i <= n; ++i)
    if (sv.x[static_cast<std::size_t>(i - 1)] == 0.0) {
      sv.singular_index = i;
      break;
    }
  return sv;
}

/// Prufer phases theta_i, i = 2..n+1, at one spectral parameter mu, defined by
///
///     cot theta_i = P_{i-1}(mu) / (b_{i-1}^2 P_{i-2}(mu)),   b_n := 1,
///
/// with the branch fixed by continuity from theta_{2j}(0) = pi/2, theta_{2j-1}(0) = 0.
struct PruferPhases {
  double mu = 0.0;
  std::vector<double> theta;  // theta[0] = theta_2
};

namespace detail {

// atan2(b^2 P_{i-2}, P_{i-1}) for i = 2..n+1; congruent to theta_i modulo pi.
inline std::vector<double> raw_phases(const AntisymTridiagonal& t, double mu) {
  const int n = t.order();
  const auto seq = charpoly_sequence(t, mu);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 2; i <= n + 1; ++i) {
    const double bb = i - 1 < n ? t.b(i - 1) * t.b(i - 1) : 1.0;
    const auto hi = static_cast<std::size_t>(i - 1);
    const auto lo = static_cast<std::size_t>(i - 2);
    const long e = std::max(seq.exponent[hi], seq.exponent[lo]);
    const double x = std::ldexp(seq.mantissa[hi], static_cast<int>(seq.exponent[hi] - e));
    const double y = bb * std::ldexp(seq.mantissa[lo], static_cast<int>(seq.exponent[lo] - e));
    out[static_cast<std::size_t>(i - 2)] = std::atan2(y, x);
  }
  return out;
}

inline double nearest_branch(double raw, double previous) {
  const double k = std::round((previous - raw) / std::numbers::pi);
  return raw + k * std::numbers::pi;
}

}  // namespace detail

/// Phases on an increasing grid of nonnegative mu values. Branches are carried
/// from the exact values at mu = 0; an interval is bisected while any phase
/// moves by more than pi/4 or increases across it.
inline std::vector<PruferPhases> prufer_phases(const AntisymTridiagonal& t, std::span<const double> grid,
                                               int max_depth = 60) {
  const int n = t.order();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (!(grid[g] >= 0.0)) throw ParameterError("prufer_phases: grid values must be nonnegative");
    if (g > 0 && !(grid[g] > grid[g - 1])) throw ParameterError("prufer_phases: grid must be strictly increasing");
  }
  std::vector<double> theta(static_cast<std::size_t>(n));
  for (int i = 2; i <= n + 1; ++i) theta[static_cast<std::size_t>(i - 2)] = i % 2 == 0 ? std::numbers::pi / 2 : 0.0;

  constexpr double kMaxStep = std::numbers::pi / 4;
  constexpr double kSlack = 1e-12;

  // Carries `theta` from mu_a to mu_b.
  auto advance = [&](auto&& self, double mu_a, double mu_b, std::vector<double>& th, int depth) -> void {
    const auto raw = detail::raw_phases(t, mu_b);
    std::vector<double> next(th.size());
    bool ok = true;
    for (std::size_t i = 0; i < th.size(); ++i) {
      next[i] = detail::nearest_branch(raw[i], th[i]);
      const double step = next[i] - th[i];
      if (std::abs(step) > kMaxStep || step > kSlack) ok = false;
    }
    if (ok) {
      th = std::move(next);
      return;
    }
    if (depth >= max_depth) throw AccuracyError("prufer_phases: branch could not be resolved after refinement");
    const double mid = 0.5 * (mu_a + mu_b);
    self(self, mu_a, mid, th, depth + 1);
    self(self, mid, mu_b, th, depth + 1);
  };

  std::vector<PruferPhases> out;
  out.reserve(grid.size());
  double mu_prev = 0.0;
  for (double mu : grid) {
    if (mu > mu_prev) advance(advance, mu_prev, mu, theta, 0);
    out.push_back({mu, theta});
    mu_prev = mu;
  }
  return out;
}

/// Limit of theta_j as mu -> infinity for the branch anchored at mu = 0.
inline double prufer_asymptote(int j) { return -std::floor((j - 1) / 2.0) * std::numbers::pi; }

}  // namespace skewbeta
