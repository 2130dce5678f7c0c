#pragma once

// Thin wrappers over Boost.Math quadrature. Integrands on finite intervals
// receive the exact distances to both endpoints, so power singularities
// |x - a|^p with p > -1 can be written without cancellation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "skewbeta/errors.hpp"

namespace skewbeta::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimate reported by the rule
  double l1 = 0.0;     // integral of |f|
};

namespace detail {

inline boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule() {
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  return rule;
}

inline boost::math::quadrature::exp_sinh<double>& exp_sinh_rule() {
  thread_local boost::math::quadrature::exp_sinh<double> rule(12);
  return rule;
}

// Integrable singularities may still overflow at abscissas that round onto
// an endpoint; those samples carry no mass and are dropped.
inline double finite_or_zero(double v) { return std::isfinite(v) ? v : 0.0; }

}  // namespace detail

/// Integral of f(x, x - a, b - x) over (a, b) by tanh-sinh.
template <class F>
Result integrate(F&& f, double a, double b, double tol = 1e-12) {
  if (!(b > a)) throw ParameterError("quadrature::integrate: empty interval");
  const double mid = 0.5 * (a + b);
  auto g = [&](double x, double xc) {
    const double d_lo = x < mid ? -xc : x - a;
    const double d_hi = x < mid ? b - x : xc;
    return detail::finite_or_zero(f(x, d_lo, d_hi));
  };
  Result r;
  std::size_t levels = 0;
  r.value = detail::tanh_sinh_rule().integrate(g, a, b, tol, &r.error, &r.l1, &levels);
  return r;
}

/// Integral of f(x, x - a) over (a, inf): tanh-sinh on (a, a + 1), exp-sinh beyond.
template <class F>
Result integrate_to_infinity(F&& f, double a, double tol = 1e-12) {
  const double split = a + 1.0;
  const Result head = integrate([&](double x, double d_lo, double) { return f(x, d_lo); }, a, split, tol);
  auto g = [&](double x) { return detail::finite_or_zero(f(x, x - a)); };
  Result tail;
  std::size_t levels = 0;
  tail.value = detail::exp_sinh_rule().integrate(g, split, std::numeric_limits<double>::infinity(), tol, &tail.error,
                                                 &tail.l1, &levels);
  return {head.value + tail.value, head.error + tail.error, head.l1 + tail.l1};
}

/// Adaptive 61-point Gauss-Kronrod for smooth integrands on (a, b).
template <class F>
Result integrate_gk(F&& f, double a, double b, double tol = 1e-12, unsigned max_depth = 15) {
  Result r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol, &r.error, &r.l1);
  return r;
}

/// Throws AccuracyError unless the reported error is within `rel` of the L1 norm.
inline const Result& require_converged(const Result& r, double rel, const char* what) {
  if (!(r.error <= rel * std::max(r.l1, std::numeric_limits<double>::min())))
    throw AccuracyError(std::string(what) + ": quadrature did not converge");
  return r;
}

}  // namespace skewbeta::quadrature
