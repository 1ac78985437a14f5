#include "negamm/fingerprint.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace negamm {

namespace {

constexpr double kRelativeStep = 1e-5;

[[noreturn]] void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, "fingerprint", message);
}

std::string fmt_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double signed_price(double magnitude, PriceDomain domain) {
  return domain == PriceDomain::Positive ? magnitude : -magnitude;
}

double reserve_at(const CurveSpec& spec, Price p, Reserve reserve) {
  const PoolState state = state_at_price(spec, p);
  return reserve == Reserve::Y ? state.y : state.x;
}

}  // namespace

double ccmm_liquidity_sqrtprice(double s, double k, Sign sign) {
  if (!(s > 0.0)) fail(ErrorKind::Domain, "sqrt-price must be positive, got " + fmt_number(s));
  if (std::isinf(s)) return 0.0;
  const double s2 = s * s;
  const double value = 2.0 * k * s2 * s / std::pow(1.0 + s2 * s2, 1.5);
  return sign == Sign::Plus ? value : -value;
}

double ccmm_liquidity_tick(double t, double k, Sign sign) {
  if (!std::isfinite(t)) fail(ErrorKind::Domain, "tick must be finite");
  // 2k e^(3t/2) / (1 + e^(2t))^(3/2); the large-|t| forms avoid overflow.
  double value;
  if (t > 0.0) {
    value = 2.0 * k * std::exp(-1.5 * t) / std::pow(1.0 + std::exp(-2.0 * t), 1.5);
  } else {
    value = 2.0 * k * std::exp(1.5 * t) / std::pow(1.0 + std::exp(2.0 * t), 1.5);
  }
  return sign == Sign::Plus ? value : -value;
}

double parabola_liquidity_sqrtprice(double s, PriceDomain domain) {
  if (!(s > 0.0)) fail(ErrorKind::Domain, "sqrt-price must be positive, got " + fmt_number(s));
  const double s2 = s * s;
  if (domain == PriceDomain::Positive) {
    const double d = 1.0 + s2;
    return 4.0 * s2 * s / (d * d * d);
  }
  if (s == 1.0) fail(ErrorKind::Singularity, "negative-domain parabola liquidity diverges at |p| = 1");
  if (s > 1.0) {
    fail(ErrorKind::Domain, "parabola has no state at price " + fmt_number(-s2));
  }
  const double d = 1.0 - s2;
  return -4.0 * s2 * s / (d * d * d);
}

double parabola_liquidity_tick(double t, PriceDomain domain) {
  if (!std::isfinite(t)) fail(ErrorKind::Domain, "tick must be finite");
  if (domain == PriceDomain::Positive) {
    if (!(t > 0.0)) {
      fail(ErrorKind::Domain, "positive-domain parabola tick needs t > 0, got " + fmt_number(t));
    }
    const double e = std::exp(-t);
    const double d = 1.0 + e;
    // 4 e^(3t/2) / (1 + e^t)^3 rewritten in e^(-t).
    return 4.0 * std::exp(-1.5 * t) / (d * d * d);
  }
  if (t == 0.0) fail(ErrorKind::Singularity, "negative-domain parabola liquidity diverges at t = 0");
  if (t > 0.0) {
    fail(ErrorKind::Domain, "negative-domain parabola tick needs t < 0, got " + fmt_number(t));
  }
  const double d = std::expm1(t);
  return 4.0 * std::exp(1.5 * t) / (d * d * d);
}

std::vector<FingerprintSample> numeric_fingerprint(const CurveSpec& spec,
                                                   std::span<const double> coord_grid, Space space,
                                                   PriceDomain domain, Reserve reserve) {
  for (std::size_t i = 1; i < coord_grid.size(); ++i) {
    if (!(coord_grid[i] > coord_grid[i - 1])) {
      fail(ErrorKind::Parameter, "coordinate grid must be strictly increasing");
    }
  }
  // Density is taken against the signed sqrt-price, which runs opposite to
  // |p| on the negative side.
  const double orientation = domain == PriceDomain::Positive ? 1.0 : -1.0;

  std::vector<FingerprintSample> out;
  out.reserve(coord_grid.size());
  for (const double c : coord_grid) {
    double density;
    if (space == Space::SqrtPrice) {
      if (!(c > 0.0) || !std::isfinite(c)) {
        fail(ErrorKind::Domain, "sqrt-price coordinates must be finite and positive");
      }
      double h = kRelativeStep * std::max(1.0, c);
      if (c - h <= 0.0) h = 0.5 * c;
      const double up = reserve_at(spec, signed_price((c + h) * (c + h), domain), reserve);
      const double down = reserve_at(spec, signed_price((c - h) * (c - h), domain), reserve);
      density = orientation * (up - down) / (2.0 * h);
    } else {
      if (!std::isfinite(c)) fail(ErrorKind::Domain, "tick coordinates must be finite");
      const double h = kRelativeStep * std::max(1.0, std::fabs(c));
      const double up = reserve_at(spec, signed_price(std::exp(c + h), domain), reserve);
      const double down = reserve_at(spec, signed_price(std::exp(c - h), domain), reserve);
      const double per_tick = (up - down) / (2.0 * h);
      density = orientation * per_tick * 2.0 / std::exp(0.5 * c);
    }
    out.push_back(FingerprintSample{c, density, domain});
  }
  return out;
}

double gaussian_fingerprint(double t, double mu, double sigma, double mass) {
  if (!(sigma > 0.0)) fail(ErrorKind::Parameter, "gaussian sigma must be positive");
  const double z = (t - mu) / sigma;
  return mass * std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

GaussianFit matched_gaussian(std::span<const FingerprintSample> samples) {
  if (samples.size() < 3) fail(ErrorKind::InsufficientData, "need at least 3 samples");
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const auto& a = samples[i - 1];
    const auto& b = samples[i];
    const double w = 0.5 * (b.coord - a.coord);
    m0 += w * (a.density + b.density);
    m1 += w * (a.density * a.coord + b.density * b.coord);
    m2 += w * (a.density * a.coord * a.coord + b.density * b.coord * b.coord);
  }
  if (!(m0 > 0.0)) fail(ErrorKind::Degenerate, "density has no positive mass");
  const double mu = m1 / m0;
  const double var = m2 / m0 - mu * mu;
  if (!(var > 0.0)) fail(ErrorKind::Degenerate, "density has zero spread");
  return GaussianFit{mu, std::sqrt(var), m0};
}

double tail_index(std::span<const FingerprintSample> samples) {
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  std::size_t n = 0;
  for (const auto& sample : samples) {
    if (!(sample.coord > 0.0 && sample.density > 0.0)) continue;
    const double lx = std::log(sample.coord);
    const double ly = std::log(sample.density);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 10) {
    fail(ErrorKind::InsufficientData,
         "tail index needs >= 10 samples with positive coord and density, got " + std::to_string(n));
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (!(denom > 0.0)) fail(ErrorKind::Degenerate, "coordinates do not vary");
  const double slope = (dn * sxy - sx * sy) / denom;
  return -slope;
}

double mass_fraction_beyond(std::span<const FingerprintSample> samples, double threshold) {
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const auto& a = samples[i - 1];
    const auto& b = samples[i];
    const double piece = 0.5 * (b.coord - a.coord) * (a.density + b.density);
    total += piece;
    if (std::fabs(a.coord) >= threshold && std::fabs(b.coord) >= threshold &&
        (a.coord >= 0.0) == (b.coord >= 0.0)) {
      tail += piece;
    }
  }
  if (!(total > 0.0)) fail(ErrorKind::Degenerate, "density has no positive mass");
  return tail / total;
}

double circle_map(Price p) {
  if (std::isnan(p)) fail(ErrorKind::Domain, "price is NaN");
  if (std::isinf(p)) return std::numbers::pi;
  const double angle = 2.0 * std::atan(p);
  return angle <= -std::numbers::pi ? std::numbers::pi : angle;
}

double circle_map_tick(double t, PriceDomain domain) {
  if (!std::isfinite(t)) fail(ErrorKind::Domain, "tick must be finite");
  const double magnitude = std::exp(t);
  return circle_map(domain == PriceDomain::Positive ? magnitude : -magnitude);
}

}  // namespace negamm
