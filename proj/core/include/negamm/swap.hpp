#pragma once

#include <utility>

#include "negamm/curves.hpp"

namespace negamm {

enum class Token { X, Y };

/// Side of the zero-price point a y-input lands on. The lower branch is
/// two-valued in y around that point, so a y amount alone does not pin the
/// new x reserve once a trade may cross it. `SameSide` keeps the side the
/// pool currently occupies. CPMM has a single side and ignores this field.
enum class Landing { SameSide, Left, Right };

/// Exact-input trade. A positive amount adds `token_in` to the pool; a
/// negative amount withdraws it. The fee is skimmed from the input before the
/// curve is traversed, so the curve sees (1 - fee) * amount_in.
struct SwapRequest {
  Token token_in = Token::X;
  double amount_in = 0.0;
  double fee = 0.0;
  Landing landing = Landing::SameSide;
};

/// `amount_out` is the decrease of the counter reserve. A negative value means
/// the trader must also deposit the counter token, which happens whenever the
/// traded asset sits at a negative price.
struct SwapResult {
  double amount_in = 0.0;
  double amount_out = 0.0;
  double fee_amount = 0.0;
  Price price_before = 0.0;
  Price price_after = 0.0;
  double residual_after = 0.0;
};

struct SwapOutcome {
  PoolState state;
  SwapResult result;
};

SwapResult quote_exact_in(const CurveSpec& spec, const PoolState& state, const SwapRequest& req);

SwapOutcome execute_swap(const CurveSpec& spec, const PoolState& state, const SwapRequest& req);

std::pair<Price, Price> price_impact(const CurveSpec& spec, const PoolState& state,
                                     const SwapRequest& req);

/// Admissible range for the post-fee input of `token` before the trade would
/// leave the trading branch. Bounds may be infinite. `landing` matters only
/// for y inputs.
Interval input_bounds(const CurveSpec& spec, const PoolState& state, Token token,
                      Landing landing = Landing::SameSide);

}  // namespace negamm
