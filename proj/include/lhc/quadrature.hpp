#pragma once

// Adaptive Gauss-Legendre quadrature: Boost's Gauss-Kronrod pair supplies the
// nodes and the error estimate, we add an absolute-tolerance contract.

#include <cmath>
#include <cstdio>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lhc/errors.hpp"

namespace lhc {

struct QuadratureOptions {
  double abs_tol = 1e-8;
  /// Relative target handed to the subdivision loop; the absolute check is applied afterwards.
  double rel_tol = 1e-10;
  unsigned max_depth = 15;
};

/// Integral of f over [a, b]; throws QuadratureFailure if the error estimate exceeds abs_tol.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (a == b) return 0.0;
  double error = 0.0, l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double s) { return f(s); }, a, b, opt.max_depth, opt.rel_tol, &error, &l1);
  if (!std::isfinite(value) || error > opt.abs_tol) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "quadrature error estimate %.3g exceeds tolerance %.3g (L1 norm %.3g)", error,
                  opt.abs_tol, l1);
    throw QuadratureFailure(buf);
  }
  return value;
}

}  // namespace lhc
