#pragma once

#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "negamm/error.hpp"

namespace negamm {

enum class Family { CPMM, CCMM, CSEMM, Parabola };

std::string_view to_string(Family family) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;

enum class Branch { Lower, Upper };

/// Branch sign in front of a square-root liquidity term.
enum class Sign { Plus = 1, Minus = -1 };

/// Marginal price of x in units of y, i.e. -dy/dx along the curve. May be
/// negative, and is +/-infinity at the ends of a bounded arc.
using Price = double;

/// Invariant family plus its parameters. Build through the named factories,
/// which enforce the per-family parameter domain.
class CurveSpec {
 public:
  /// (x-k)^2 + (y-k)^2 = k^2, offsets pinned to the radius.
  static CurveSpec ccmm(double k);
  /// |x/alpha - 1|^u(alpha) + |y/beta - 1|^u(beta) = 1, alpha, beta >= 2.
  static CurveSpec csemm(double alpha, double beta);
  /// y = (1 - sqrt(x))^m for even m >= 2.
  static CurveSpec parabola(int m);
  /// x * y = L^2.
  static CurveSpec cpmm(double liquidity);

  Family family() const noexcept { return family_; }
  double k() const noexcept { return k_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  int m() const noexcept { return m_; }
  double liquidity() const noexcept { return liquidity_; }

  /// Normalization used by residual tolerances: k, 1, 1 or L^2.
  double residual_scale() const noexcept;

  std::string describe() const;

 private:
  CurveSpec() = default;

  Family family_ = Family::CPMM;
  double k_ = 0.0;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  int m_ = 0;
  double liquidity_ = 0.0;
};

/// Reserves on the curve. `theta` is the arc angle for CCMM (in [pi, 2pi] on
/// the trading arc) and NaN for the other families.
struct PoolState {
  double x = 0.0;
  double y = 0.0;
  double theta = std::numeric_limits<double>::quiet_NaN();
};

/// |base|^exponent computed as exp(exponent * ln|base|) with an exact
/// zero shortcut. `exponent` must be positive.
double abs_pow(double base, double exponent) noexcept;

double invariant_residual(const CurveSpec& spec, double x, double y);

/// Lame exponent u(c) = ln 2 / ln(c / (c - 1)).
double csemm_exponent(double c);

double ccmm_y_from_x(double x, double k, Branch branch = Branch::Lower);
double ccmm_x_from_y(double y, double k, bool right_of_center);
double ccmm_angle_from_price(Price p);
PoolState ccmm_state_at_angle(double k, double theta);
/// Arc angle of an on-circle point, normalized to [pi, 2pi] on the lower arc.
double ccmm_angle_of(double k, double x, double y);

double csemm_y_from_x(double x, double alpha, double beta,
                      Branch branch = Branch::Lower);
double csemm_x_from_y(double y, double alpha, double beta, bool right_of_center);
Price csemm_price_at_x(double x, double alpha, double beta);
double csemm_x_from_price(Price p, double alpha, double beta);

/// x = +/- L / sqrt(p); the minus branch is the negative-liquidity root.
double cpmm_x_from_price(Price p, double liquidity, Sign sign = Sign::Plus);

double parabola_y_from_x(double x, int m);

Price price_of(const CurveSpec& spec, const PoolState& state);

/// Lower-branch state with the given x reserve.
PoolState state_from_x(const CurveSpec& spec, double x);

/// Lower-branch state whose marginal price is p. Parabola supports m = 2 only
/// (price domain p > -1); CPMM needs p > 0.
PoolState state_at_price(const CurveSpec& spec, Price p);

/// Closed x interval of the trading branch; the upper end may be +infinity.
struct Interval {
  double lo;
  double hi;
};
Interval x_domain(const CurveSpec& spec);

}  // namespace negamm
