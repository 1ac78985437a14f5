#pragma once

#include "negamm/curves.hpp"

namespace negamm {

/// Arithmetic (Bachelier) volatility: absolute price units per sqrt(time).
/// Log-volatility is undefined once prices cross zero.
struct VolatilityInput {
  double sigma_iv = 0.0;
};

/// LP position Greeks at price p, valued in units of the y token.
///
/// Theta follows the concavity-to-yield relation theta = -(sigma^2 / 2) gamma.
/// With gamma <= 0 on the trading arc, a positive theta is the yield the LP
/// has to earn to offset the concavity of the position.
struct GreeksPoint {
  Price p = 0.0;
  double value = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
};

/// V(p) = p x(p) + y(p), the conjugate (envelope) value of the pool.
double lp_value(const CurveSpec& spec, Price p);

/// dV/dp, which equals the x reserve at p by the envelope theorem.
double delta(const CurveSpec& spec, Price p);

/// dx/dp in closed form.
double gamma(const CurveSpec& spec, Price p);

double theta(const CurveSpec& spec, Price p, const VolatilityInput& vol);

GreeksPoint greeks(const CurveSpec& spec, Price p, const VolatilityInput& vol);

}  // namespace negamm
