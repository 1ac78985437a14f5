#include "negamm/swap.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace negamm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOnCurveTolerance = 1e-9;

[[noreturn]] void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, "swap_engine", message);
}

std::string fmt_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Reserve at which the marginal price of x crosses zero.
double center_x(const CurveSpec& spec) {
  switch (spec.family()) {
    case Family::CCMM: return spec.k();
    case Family::CSEMM: return spec.alpha();
    case Family::Parabola: return 1.0;
    case Family::CPMM: return kInf;
  }
  return kInf;
}

bool lands_right(const CurveSpec& spec, const PoolState& state, Landing landing) {
  switch (landing) {
    case Landing::Left: return false;
    case Landing::Right: return true;
    case Landing::SameSide: break;
  }
  return state.x > center_x(spec);
}

// Admissible y interval on one side of the zero-price point.
Interval y_domain(const CurveSpec& spec, bool right) {
  switch (spec.family()) {
    case Family::CCMM: return {0.0, spec.k()};
    case Family::CSEMM: return {0.0, spec.beta()};
    case Family::Parabola: return {0.0, right ? kInf : 1.0};
    case Family::CPMM: return {0.0, kInf};
  }
  return {0.0, 0.0};
}

void check_on_curve(const CurveSpec& spec, const PoolState& state) {
  const double residual = invariant_residual(spec, state.x, state.y);
  if (!(std::fabs(residual) <= kOnCurveTolerance * spec.residual_scale())) {
    fail(ErrorKind::Domain, "pool state (" + fmt_number(state.x) + ", " + fmt_number(state.y) +
                                ") is off the curve, residual " + fmt_number(residual));
  }
}

double x_from_y_on_side(const CurveSpec& spec, double y, bool right) {
  switch (spec.family()) {
    case Family::CCMM: return ccmm_x_from_y(y, spec.k(), right);
    case Family::CSEMM: return csemm_x_from_y(y, spec.alpha(), spec.beta(), right);
    case Family::Parabola: {
      const double root = std::pow(y, 1.0 / spec.m());
      const double s = right ? 1.0 + root : 1.0 - root;
      return s * s;
    }
    case Family::CPMM: {
      const double l = spec.liquidity();
      return l * l / y;
    }
  }
  return 0.0;
}

bool inside(double v, const Interval& range, bool open_lower) {
  if (open_lower) return v > range.lo && v <= range.hi;
  return v >= range.lo && v <= range.hi;
}

}  // namespace

Interval input_bounds(const CurveSpec& spec, const PoolState& state, Token token, Landing landing) {
  if (token == Token::X) {
    const Interval dom = x_domain(spec);
    return {dom.lo - state.x, dom.hi - state.x};
  }
  const Interval dom = y_domain(spec, lands_right(spec, state, landing));
  return {dom.lo - state.y, dom.hi - state.y};
}

SwapOutcome execute_swap(const CurveSpec& spec, const PoolState& state, const SwapRequest& req) {
  if (!(req.fee >= 0.0 && req.fee < 1.0)) {
    fail(ErrorKind::InvalidFee, "fee must lie in [0, 1), got " + fmt_number(req.fee));
  }
  if (!std::isfinite(req.amount_in) || req.amount_in == 0.0) {
    fail(ErrorKind::Parameter, "amount_in must be finite and nonzero");
  }
  check_on_curve(spec, state);

  const double effective = (1.0 - req.fee) * req.amount_in;
  const bool cpmm = spec.family() == Family::CPMM;
  PoolState next;
  double amount_out = 0.0;

  if (req.token_in == Token::X) {
    const double x = state.x + effective;
    if (!inside(x, x_domain(spec), cpmm)) {
      fail(ErrorKind::DomainExceeded,
           "post-trade x reserve " + fmt_number(x) + " leaves the trading branch");
    }
    next = state_from_x(spec, x);
    amount_out = state.y - next.y;
  } else {
    const double y = state.y + effective;
    const bool right = lands_right(spec, state, req.landing);
    if (!inside(y, y_domain(spec, right), cpmm)) {
      fail(ErrorKind::DomainExceeded,
           "post-trade y reserve " + fmt_number(y) + " leaves the trading branch");
    }
    next = PoolState{x_from_y_on_side(spec, y, right), y};
    if (spec.family() == Family::CCMM) next.theta = ccmm_angle_of(spec.k(), next.x, y);
    amount_out = state.x - next.x;
  }

  SwapResult result;
  result.amount_in = req.amount_in;
  result.amount_out = amount_out;
  result.fee_amount = req.amount_in - effective;
  result.price_before = price_of(spec, state);
  result.price_after = price_of(spec, next);
  result.residual_after = invariant_residual(spec, next.x, next.y);
  return SwapOutcome{next, result};
}

SwapResult quote_exact_in(const CurveSpec& spec, const PoolState& state, const SwapRequest& req) {
  return execute_swap(spec, state, req).result;
}

std::pair<Price, Price> price_impact(const CurveSpec& spec, const PoolState& state,
                                     const SwapRequest& req) {
  const SwapResult r = quote_exact_in(spec, state, req);
  return {r.price_before, r.price_after};
}

}  // namespace negamm
