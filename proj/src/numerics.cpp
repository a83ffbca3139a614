#include "freshopt/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "freshopt/errors.hpp"

namespace freshopt {

namespace {

void check_config(double rel_tol, double abs_tol) {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw std::domain_error("tolerances must be positive");
  }
}

double eval_checked(const std::function<double(double)>& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw NumericError("integrand is not finite at t = " + std::to_string(x));
  }
  return y;
}

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double eps,
             int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = eval_checked(f, lm);
  const double frm = eval_checked(f, rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;  // Richardson correction
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadConfig& cfg) {
  check_config(cfg.rel_tol, cfg.abs_tol);
  if (!(a <= b)) {
    throw std::domain_error("integration bounds must satisfy a <= b");
  }
  if (a == b) return 0.0;

  const double fa = eval_checked(f, a);
  const double fb = eval_checked(f, b);
  const double fm = eval_checked(f, 0.5 * (a + b));
  const double whole = simpson(a, b, fa, fm, fb);
  const double eps = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(whole));
  return adapt(f, a, b, fa, fm, fb, whole, eps, cfg.max_depth);
}

double find_root_increasing(const std::function<double(double)>& g, double lo,
                            double hi_hint, const RootConfig& cfg) {
  check_config(cfg.rel_tol, cfg.abs_tol);
  if (cfg.max_iter < 1) {
    throw std::domain_error("max_iter must be >= 1");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi_hint) || !(hi_hint > lo)) {
    throw std::domain_error("bracket hint must satisfy lo < hi_hint, finite");
  }

  double hi = hi_hint;
  double g_hi = g(hi);
  int doublings = 0;
  while (g_hi <= 0.0) {
    if (g_hi == 0.0) return hi;
    if (++doublings > 64 || !std::isfinite(hi)) {
      throw NumericError(
          "no finite root: function stayed negative after 64 bracket "
          "doublings (is the cost unbounded growth condition met?)");
    }
    lo = hi;  // g(hi) < 0, so the root lies above
    hi = hi_hint * std::ldexp(1.0, doublings);
    g_hi = g(hi);
  }

  // Invariant: g < 0 at lo (or just above it), g > 0 at hi.
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < cfg.max_iter; ++it) {
    mid = 0.5 * (lo + hi);
    if (hi - lo <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(mid))) break;
    const double g_mid = g(mid);
    if (!std::isfinite(g_mid)) {
      throw NumericError("root objective is not finite at t = " +
                         std::to_string(mid));
    }
    if (g_mid == 0.0) return mid;
    if (g_mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace freshopt
