#pragma once

#include <functional>

namespace freshopt {

struct RootConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_iter = 200;
};

struct QuadConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_depth = 50;
};

/// Adaptive Simpson quadrature of f over [a, b]. Requires a <= b; returns 0
/// when a == b. Throws NumericError if f evaluates to a non-finite value
/// (the message names the offending abscissa).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadConfig& cfg = {});

/// Root of a strictly increasing function g with g(lo+) < 0, never evaluated
/// at lo itself. The upper bracket starts at hi_hint and doubles until
/// g > 0 (at most 64 doublings, else NumericError "no finite root"), then
/// plain bisection runs until the bracket width is below
/// max(abs_tol, rel_tol * |midpoint|). Bisection is used instead of a
/// derivative method because Table age costs have kinked derivatives.
double find_root_increasing(const std::function<double(double)>& g, double lo,
                            double hi_hint, const RootConfig& cfg = {});

}  // namespace freshopt
