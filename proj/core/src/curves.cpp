#include "negamm/curves.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace negamm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBisectionCap = 200;
constexpr double kBisectionTolerance = 1e-12;

[[noreturn]] void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, "curves", message);
}

std::string fmt_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double ipow(double base, int exponent) {
  double result = 1.0;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

void require_finite(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    fail(ErrorKind::Domain, "reserves must be finite");
  }
}

}  // namespace

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::DomainExceeded: return "domain exceeded";
    case ErrorKind::InvalidFee: return "invalid fee";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Convergence: return "convergence error";
    case ErrorKind::InsufficientData: return "insufficient data";
    case ErrorKind::Degenerate: return "degenerate data";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Monotonicity: return "monotonicity error";
    case ErrorKind::EmptyFile: return "empty file";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::CPMM: return "cpmm";
    case Family::CCMM: return "ccmm";
    case Family::CSEMM: return "csemm";
    case Family::Parabola: return "parabola";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  if (name == "cpmm") return Family::CPMM;
  if (name == "ccmm") return Family::CCMM;
  if (name == "csemm") return Family::CSEMM;
  if (name == "parabola") return Family::Parabola;
  return std::nullopt;
}

CurveSpec CurveSpec::ccmm(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    fail(ErrorKind::Parameter, "ccmm requires finite k > 0, got " + fmt_number(k));
  }
  CurveSpec spec;
  spec.family_ = Family::CCMM;
  spec.k_ = k;
  return spec;
}

CurveSpec CurveSpec::csemm(double alpha, double beta) {
  if (!(alpha >= 2.0) || !std::isfinite(alpha)) {
    fail(ErrorKind::Parameter, "csemm requires finite alpha >= 2, got " + fmt_number(alpha));
  }
  if (!(beta >= 2.0) || !std::isfinite(beta)) {
    fail(ErrorKind::Parameter, "csemm requires finite beta >= 2, got " + fmt_number(beta));
  }
  CurveSpec spec;
  spec.family_ = Family::CSEMM;
  spec.alpha_ = alpha;
  spec.beta_ = beta;
  return spec;
}

CurveSpec CurveSpec::parabola(int m) {
  if (m < 2 || m % 2 != 0) {
    fail(ErrorKind::Parameter, "parabola requires an even exponent m >= 2, got " + std::to_string(m));
  }
  CurveSpec spec;
  spec.family_ = Family::Parabola;
  spec.m_ = m;
  return spec;
}

CurveSpec CurveSpec::cpmm(double liquidity) {
  if (!(liquidity > 0.0) || !std::isfinite(liquidity)) {
    fail(ErrorKind::Parameter, "cpmm requires finite L > 0, got " + fmt_number(liquidity));
  }
  CurveSpec spec;
  spec.family_ = Family::CPMM;
  spec.liquidity_ = liquidity;
  return spec;
}

double CurveSpec::residual_scale() const noexcept {
  switch (family_) {
    case Family::CCMM: return k_;
    case Family::CPMM: return liquidity_ * liquidity_;
    case Family::CSEMM:
    case Family::Parabola: return 1.0;
  }
  return 1.0;
}

std::string CurveSpec::describe() const {
  switch (family_) {
    case Family::CCMM: return "ccmm(k=" + fmt_number(k_) + ")";
    case Family::CSEMM:
      return "csemm(alpha=" + fmt_number(alpha_) + ",beta=" + fmt_number(beta_) + ")";
    case Family::Parabola: return "parabola(m=" + std::to_string(m_) + ")";
    case Family::CPMM: return "cpmm(L=" + fmt_number(liquidity_) + ")";
  }
  return "unknown";
}

double abs_pow(double base, double exponent) noexcept {
  const double magnitude = std::fabs(base);
  if (magnitude == 0.0) return exponent == 0.0 ? 1.0 : 0.0;
  return std::exp(exponent * std::log(magnitude));
}

double csemm_exponent(double c) {
  if (!(c >= 2.0)) {
    fail(ErrorKind::Parameter, "lame exponent needs c >= 2, got " + fmt_number(c));
  }
  if (std::isinf(c)) return kInf;
  // ln(c / (c - 1)) = -ln(1 - 1/c)
  return std::numbers::ln2 / -std::log1p(-1.0 / c);
}

double invariant_residual(const CurveSpec& spec, double x, double y) {
  require_finite(x, y);
  switch (spec.family()) {
    case Family::CCMM: {
      const double k = spec.k();
      const double dx = x - k;
      const double dy = y - k;
      return dx * dx + dy * dy - k * k;
    }
    case Family::CSEMM: {
      const double ua = csemm_exponent(spec.alpha());
      const double ub = csemm_exponent(spec.beta());
      return abs_pow(x / spec.alpha() - 1.0, ua) + abs_pow(y / spec.beta() - 1.0, ub) - 1.0;
    }
    case Family::Parabola: {
      if (x < 0.0) fail(ErrorKind::Domain, "parabola needs x >= 0, got " + fmt_number(x));
      return ipow(1.0 - std::sqrt(x), spec.m()) - y;
    }
    case Family::CPMM: {
      const double l = spec.liquidity();
      return x * y - l * l;
    }
  }
  return 0.0;
}

double ccmm_y_from_x(double x, double k, Branch branch) {
  if (!(x >= 0.0 && x <= 2.0 * k)) {
    fail(ErrorKind::Domain, "ccmm x must lie in [0, 2k], got " + fmt_number(x));
  }
  // k^2 - (x-k)^2 factored to avoid cancellation.
  const double half_chord = std::sqrt(x * (2.0 * k - x));
  return branch == Branch::Lower ? k - half_chord : k + half_chord;
}

double ccmm_x_from_y(double y, double k, bool right_of_center) {
  if (!(y >= 0.0 && y <= 2.0 * k)) {
    fail(ErrorKind::Domain, "ccmm y must lie in [0, 2k], got " + fmt_number(y));
  }
  const double half_chord = std::sqrt(y * (2.0 * k - y));
  return right_of_center ? k + half_chord : k - half_chord;
}

double ccmm_angle_from_price(Price p) {
  if (!std::isfinite(p)) fail(ErrorKind::Domain, "price must be finite");
  return 1.5 * kPi - std::atan(p);
}

PoolState ccmm_state_at_angle(double k, double theta) {
  return PoolState{k * (1.0 + std::cos(theta)), k * (1.0 + std::sin(theta)), theta};
}

double csemm_y_from_x(double x, double alpha, double beta, Branch branch) {
  if (!(x >= 0.0 && x <= 2.0 * alpha)) {
    fail(ErrorKind::Domain, "csemm x must lie in [0, 2 alpha], got " + fmt_number(x));
  }
  const double ua = csemm_exponent(alpha);
  const double ub = csemm_exponent(beta);
  const double remainder = std::max(0.0, 1.0 - abs_pow(x / alpha - 1.0, ua));
  const double offset = abs_pow(remainder, 1.0 / ub);
  return branch == Branch::Lower ? beta * (1.0 - offset) : beta * (1.0 + offset);
}

double csemm_x_from_y(double y, double alpha, double beta, bool right_of_center) {
  if (!(y >= 0.0 && y <= 2.0 * beta)) {
    fail(ErrorKind::Domain, "csemm y must lie in [0, 2 beta], got " + fmt_number(y));
  }
  const double ua = csemm_exponent(alpha);
  const double ub = csemm_exponent(beta);
  const double remainder = std::max(0.0, 1.0 - abs_pow(y / beta - 1.0, ub));
  const double offset = abs_pow(remainder, 1.0 / ua);
  return right_of_center ? alpha * (1.0 + offset) : alpha * (1.0 - offset);
}

Price csemm_price_at_x(double x, double alpha, double beta) {
  if (!(x >= 0.0 && x <= 2.0 * alpha)) {
    fail(ErrorKind::Domain, "csemm x must lie in [0, 2 alpha], got " + fmt_number(x));
  }
  const double ua = csemm_exponent(alpha);
  const double ub = csemm_exponent(beta);
  const double shifted = x / alpha - 1.0;
  const double a = std::fabs(shifted);
  if (a == 0.0) return 0.0;
  const double sign = shifted < 0.0 ? 1.0 : -1.0;
  // On the lower branch |y/beta - 1|^ub = 1 - |x/alpha - 1|^ua; working with
  // that complement avoids cancelling y against beta near the arc ends.
  const double complement = std::max(0.0, 1.0 - abs_pow(a, ua));
  const double numerator = ua * beta * abs_pow(a, ua - 1.0);
  const double denominator = ub * alpha * abs_pow(complement, (ub - 1.0) / ub);
  if (denominator == 0.0) return sign * kInf;
  return sign * numerator / denominator;
}

double csemm_x_from_price(Price p, double alpha, double beta) {
  if (!std::isfinite(p)) fail(ErrorKind::Domain, "price must be finite");
  csemm_exponent(alpha);
  csemm_exponent(beta);
  if (p == 0.0) return alpha;
  // Price falls from +inf at x = 0 through 0 at x = alpha to -inf at 2 alpha.
  double lo = p > 0.0 ? 0.0 : alpha;
  double hi = p > 0.0 ? alpha : 2.0 * alpha;
  for (int iter = 0; iter < kBisectionCap; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return mid;
    const double price = csemm_price_at_x(mid, alpha, beta);
    if (price == p) return mid;
    if (price > p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo <= kBisectionTolerance) return lo + 0.5 * (hi - lo);
  fail(ErrorKind::Convergence, "bisection did not converge for price " + fmt_number(p));
}

double cpmm_x_from_price(Price p, double liquidity, Sign sign) {
  if (!(p > 0.0)) {
    fail(ErrorKind::Domain, "cpmm has no state at non-positive price " + fmt_number(p));
  }
  const double magnitude = liquidity / std::sqrt(p);
  return sign == Sign::Plus ? magnitude : -magnitude;
}

double parabola_y_from_x(double x, int m) {
  if (!(x >= 0.0)) fail(ErrorKind::Domain, "parabola needs x >= 0, got " + fmt_number(x));
  if (m < 2 || m % 2 != 0) fail(ErrorKind::Parameter, "parabola exponent must be even and >= 2");
  return ipow(1.0 - std::sqrt(x), m);
}

Price price_of(const CurveSpec& spec, const PoolState& state) {
  require_finite(state.x, state.y);
  switch (spec.family()) {
    case Family::CCMM: {
      const double k = spec.k();
      const double x = state.x;
      if (!(x >= 0.0 && x <= 2.0 * k)) {
        fail(ErrorKind::Domain, "ccmm x must lie in [0, 2k], got " + fmt_number(x));
      }
      const double half_chord = std::sqrt(x * (2.0 * k - x));
      if (half_chord == 0.0) return x < k ? kInf : -kInf;
      return (k - x) / half_chord;
    }
    case Family::CSEMM:
      return csemm_price_at_x(state.x, spec.alpha(), spec.beta());
    case Family::Parabola: {
      if (!(state.x >= 0.0)) fail(ErrorKind::Domain, "parabola needs x >= 0");
      const double s = std::sqrt(state.x);
      if (s == 0.0) return kInf;
      return spec.m() * ipow(1.0 - s, spec.m() - 1) / (2.0 * s);
    }
    case Family::CPMM:
      if (!(state.x > 0.0)) fail(ErrorKind::Domain, "cpmm needs x > 0");
      return state.y / state.x;
  }
  return 0.0;
}

double ccmm_angle_of(double k, double x, double y) {
  double theta = std::atan2(y - k, x - k);
  if (theta < kPi) theta += 2.0 * kPi;
  return theta;
}

PoolState state_from_x(const CurveSpec& spec, double x) {
  switch (spec.family()) {
    case Family::CCMM: {
      const double y = ccmm_y_from_x(x, spec.k());
      return PoolState{x, y, ccmm_angle_of(spec.k(), x, y)};
    }
    case Family::CSEMM:
      return PoolState{x, csemm_y_from_x(x, spec.alpha(), spec.beta())};
    case Family::Parabola:
      return PoolState{x, parabola_y_from_x(x, spec.m())};
    case Family::CPMM: {
      if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorKind::Domain, "cpmm needs finite x > 0");
      const double l = spec.liquidity();
      return PoolState{x, l * l / x};
    }
  }
  return PoolState{};
}

PoolState state_at_price(const CurveSpec& spec, Price p) {
  if (!std::isfinite(p)) fail(ErrorKind::Domain, "price must be finite");
  switch (spec.family()) {
    case Family::CCMM: {
      // x = k (1 - p / h), y = k (1 - 1 / h) with h = sqrt(1 + p^2), each
      // rearranged so the subtraction never cancels.
      const double k = spec.k();
      const double h = std::hypot(1.0, p);
      const double x = p > 0.0 ? k / (h * (h + p)) : k * (1.0 - p / h);
      const double y = std::fabs(p) < 1.0 ? k * p * p / (h * (h + 1.0)) : k * (1.0 - 1.0 / h);
      return PoolState{x, y, ccmm_angle_from_price(p)};
    }
    case Family::CSEMM: {
      const double x = csemm_x_from_price(p, spec.alpha(), spec.beta());
      return PoolState{x, csemm_y_from_x(x, spec.alpha(), spec.beta())};
    }
    case Family::Parabola: {
      if (spec.m() != 2) {
        fail(ErrorKind::Domain, "parabola price inversion is implemented for m = 2 only");
      }
      if (!(p > -1.0)) {
        fail(ErrorKind::Domain, "parabola (m=2) prices lie in (-1, inf), got " + fmt_number(p));
      }
      const double root = 1.0 / (1.0 + p);
      const double ratio = p / (1.0 + p);
      return PoolState{root * root, ratio * ratio};
    }
    case Family::CPMM: {
      const double x = cpmm_x_from_price(p, spec.liquidity());
      return PoolState{x, spec.liquidity() * std::sqrt(p)};
    }
  }
  return PoolState{};
}

Interval x_domain(const CurveSpec& spec) {
  switch (spec.family()) {
    case Family::CCMM: return {0.0, 2.0 * spec.k()};
    case Family::CSEMM: return {0.0, 2.0 * spec.alpha()};
    case Family::Parabola: return {0.0, kInf};
    case Family::CPMM: return {0.0, kInf};
  }
  return {0.0, 0.0};
}

}  // namespace negamm
