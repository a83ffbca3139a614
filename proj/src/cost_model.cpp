#include "freshopt/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace freshopt {

namespace {

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(name) + " must be positive and finite");
  }
}

void validate_table(const AgeCost::Table& tab) {
  const auto& pts = tab.points;
  if (pts.size() < 2) {
    throw std::domain_error("table age cost needs at least two breakpoints");
  }
  if (pts.front().t != 0.0) {
    throw std::domain_error("table age cost must start at t = 0");
  }
  if (!(pts.front().c >= 0.0)) {
    throw std::domain_error("table age cost values must be nonnegative");
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i].t > pts[i - 1].t)) {
      throw std::domain_error("table breakpoint times must be strictly increasing");
    }
    if (!(pts[i].c > pts[i - 1].c)) {
      // Strictly increasing values keep every segment slope positive,
      // certifying C_a' > 0 for the optimizer's uniqueness argument.
      throw std::domain_error("table cost values must be strictly increasing");
    }
    if (!std::isfinite(pts[i].t) || !std::isfinite(pts[i].c)) {
      throw std::domain_error("table breakpoints must be finite");
    }
  }
}

void require_time(double t) {
  if (!(t >= 0.0)) {
    throw std::domain_error("age must be nonnegative");
  }
}

}  // namespace

AgeCost::AgeCost(Spec spec) : spec_(std::move(spec)) {
  std::visit(
      [this](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Linear>) {
          require_positive(s.slope, "linear slope");
        } else if constexpr (std::is_same_v<S, Power>) {
          require_positive(s.coeff, "power coefficient");
          require_positive(s.exponent, "power exponent");
        } else if constexpr (std::is_same_v<S, Exponential>) {
          require_positive(s.scale, "exponential scale");
          require_positive(s.rate, "exponential rate");
        } else {
          validate_table(s);
          // Running exact trapezoid areas so integral() is O(log n).
          table_cum_.resize(s.points.size());
          table_cum_[0] = 0.0;
          for (std::size_t i = 1; i < s.points.size(); ++i) {
            const auto& a = s.points[i - 1];
            const auto& b = s.points[i];
            table_cum_[i] = table_cum_[i - 1] + 0.5 * (a.c + b.c) * (b.t - a.t);
          }
        }
      },
      spec_);
}

double AgeCost::value(double t) const {
  require_time(t);
  return std::visit(
      [t, this](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Linear>) {
          return s.slope * t;
        } else if constexpr (std::is_same_v<S, Power>) {
          return s.coeff * std::pow(t, s.exponent);
        } else if constexpr (std::is_same_v<S, Exponential>) {
          return s.scale * std::expm1(s.rate * t);
        } else {
          const auto& pts = s.points;
          auto it = std::upper_bound(
              pts.begin(), pts.end(), t,
              [](double x, const TablePoint& p) { return x < p.t; });
          // t >= 0 = pts[0].t, so it - begin >= 1; clamp to the last
          // segment so t past the end extrapolates with its slope.
          std::size_t lo =
              std::min(static_cast<std::size_t>(it - pts.begin()),
                       pts.size() - 1) -
              1;
          const auto& a = pts[lo];
          const auto& b = pts[lo + 1];
          const double slope = (b.c - a.c) / (b.t - a.t);
          return a.c + slope * (t - a.t);
        }
      },
      spec_);
}

double AgeCost::integral(double t) const {
  require_time(t);
  return std::visit(
      [t, this](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Linear>) {
          return 0.5 * s.slope * t * t;
        } else if constexpr (std::is_same_v<S, Power>) {
          return s.coeff * std::pow(t, s.exponent + 1.0) / (s.exponent + 1.0);
        } else if constexpr (std::is_same_v<S, Exponential>) {
          return s.scale * (std::expm1(s.rate * t) / s.rate - t);
        } else {
          const auto& pts = s.points;
          auto it = std::upper_bound(
              pts.begin(), pts.end(), t,
              [](double x, const TablePoint& p) { return x < p.t; });
          std::size_t lo =
              std::min(static_cast<std::size_t>(it - pts.begin()),
                       pts.size() - 1) -
              1;
          // Exact area: full trapezoids up to breakpoint lo plus the
          // partial trapezoid from pts[lo].t to t (the function is linear
          // there, including the extrapolated region).
          const double c_t = value(t);
          const double dt = t - pts[lo].t;
          return table_cum_[lo] + 0.5 * (pts[lo].c + c_t) * dt;
        }
      },
      spec_);
}

double AgeCost::derivative(double t) const {
  require_time(t);
  return std::visit(
      [t](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Linear>) {
          return s.slope;
        } else if constexpr (std::is_same_v<S, Power>) {
          return s.coeff * s.exponent * std::pow(t, s.exponent - 1.0);
        } else if constexpr (std::is_same_v<S, Exponential>) {
          return s.scale * s.rate * std::exp(s.rate * t);
        } else {
          const auto& pts = s.points;
          auto it = std::upper_bound(
              pts.begin(), pts.end(), t,
              [](double x, const TablePoint& p) { return x < p.t; });
          std::size_t lo =
              std::min(static_cast<std::size_t>(it - pts.begin()),
                       pts.size() - 1) -
              1;
          const auto& a = pts[lo];
          const auto& b = pts[lo + 1];
          return (b.c - a.c) / (b.t - a.t);
        }
      },
      spec_);
}

Scenario::Scenario(double lambda, double refresh_cost, AgeCost age_cost)
    : lambda_(lambda),
      refresh_cost_(refresh_cost),
      age_cost_(std::move(age_cost)) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("update rate lambda must be finite and >= 0");
  }
  require_positive(refresh_cost, "refresh cost");
}

CostReport long_run_cost(const Scenario& scn, double interval) {
  if (!(interval > 0.0) || !std::isfinite(interval)) {
    throw std::domain_error("refresh interval must be positive and finite");
  }
  CostReport r;
  r.interval = interval;
  r.refresh_component = scn.refresh_cost() / interval;
  r.age_component = scn.lambda() * scn.age_cost().integral(interval) / interval;
  r.total = r.refresh_component + r.age_component;
  return r;
}

}  // namespace freshopt
