#include "negamm/payoff.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace negamm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, "payoff", message);
}

void check_price_domain(const CurveSpec& spec, Price p) {
  if (!std::isfinite(p)) fail(ErrorKind::Domain, "price must be finite");
  switch (spec.family()) {
    case Family::CPMM:
      if (!(p > 0.0)) fail(ErrorKind::Domain, "cpmm prices must be positive");
      break;
    case Family::Parabola:
      if (spec.m() != 2) fail(ErrorKind::Domain, "parabola payoff is implemented for m = 2 only");
      if (!(p > -1.0)) fail(ErrorKind::Domain, "parabola (m=2) prices lie in (-1, inf)");
      break;
    case Family::CCMM:
    case Family::CSEMM:
      break;
  }
}

// d(price)/dx on the CSEMM lower branch.
double csemm_price_slope(double x, double alpha, double beta) {
  const double ua = csemm_exponent(alpha);
  const double ub = csemm_exponent(beta);
  const double a = std::fabs(x / alpha - 1.0);
  const double scale = ua * beta / (ub * alpha * alpha);
  if (a == 0.0) {
    // |x/alpha - 1|^(ua - 2) is 0, 1 or unbounded at the zero-price point.
    constexpr double kTol = 1e-9;
    if (ua < 2.0 - kTol) return -kInf;
    if (ua > 2.0 + kTol) return 0.0;
    return -scale * (ua - 1.0);
  }
  const double complement = 1.0 - std::pow(a, ua);
  if (!(complement > 0.0)) return -kInf;
  const double e = (1.0 - ub) / ub;
  const double first = (ua - 1.0) * std::pow(a, ua - 2.0) * std::pow(complement, e);
  const double second =
      ((ub - 1.0) / ub) * ua * std::pow(a, 2.0 * ua - 2.0) * std::pow(complement, e - 1.0);
  return -scale * (first + second);
}

}  // namespace

double lp_value(const CurveSpec& spec, Price p) {
  check_price_domain(spec, p);
  const PoolState state = state_at_price(spec, p);
  return p * state.x + state.y;
}

double delta(const CurveSpec& spec, Price p) {
  check_price_domain(spec, p);
  return state_at_price(spec, p).x;
}

double gamma(const CurveSpec& spec, Price p) {
  check_price_domain(spec, p);
  switch (spec.family()) {
    case Family::CCMM:
      // x = k (1 + cos theta), theta = 3pi/2 - atan p.
      return -spec.k() / std::pow(1.0 + p * p, 1.5);
    case Family::CSEMM: {
      const double x = csemm_x_from_price(p, spec.alpha(), spec.beta());
      const double slope = csemm_price_slope(x, spec.alpha(), spec.beta());
      if (slope == 0.0) return -kInf;
      return 1.0 / slope;
    }
    case Family::Parabola: {
      const double d = 1.0 + p;
      return -2.0 / (d * d * d);
    }
    case Family::CPMM:
      return -0.5 * spec.liquidity() / (p * std::sqrt(p));
  }
  return 0.0;
}

double theta(const CurveSpec& spec, Price p, const VolatilityInput& vol) {
  if (!(vol.sigma_iv >= 0.0) || !std::isfinite(vol.sigma_iv)) {
    fail(ErrorKind::Parameter, "sigma_iv must be finite and non-negative");
  }
  const double g = gamma(spec, p);
  if (vol.sigma_iv == 0.0) return 0.0;
  return -0.5 * vol.sigma_iv * vol.sigma_iv * g;
}

GreeksPoint greeks(const CurveSpec& spec, Price p, const VolatilityInput& vol) {
  GreeksPoint point;
  point.p = p;
  point.value = lp_value(spec, p);
  point.delta = delta(spec, p);
  point.gamma = gamma(spec, p);
  point.theta = theta(spec, p, vol);
  return point;
}

}  // namespace negamm
