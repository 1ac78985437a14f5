// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances are fixed below.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "negamm/curves.hpp"
#include "negamm/fingerprint.hpp"
#include "negamm/payoff.hpp"
#include "negamm/series.hpp"
#include "negamm/swap.hpp"
#include "oracles.hpp"

namespace {

using namespace negamm;
namespace orc = negamm::oracle;

constexpr double kCircleTol = 1e-9;
constexpr double kDiamondTol = 1e-6;
constexpr double kSlopeTol = 0.01;
constexpr double kHillTol = 0.2;
constexpr double kFingerprintRelTol = 1e-6;
constexpr double kConservationTol = 1e-9;
constexpr double kGreekTol = 1e-6;
constexpr double kConcavityNoise = 1e-12;
constexpr int kFuzzSwaps = 10'000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome circle_recovery() {
  const double a = 2.0 + orc::kSqrt2;
  double worst = 0.0;
  for (double x : orc::linspace(0.0, 2.0 * a, 1000)) {
    worst = std::max(worst, std::fabs(csemm_y_from_x(x, a, a) - ccmm_y_from_x(x, a)));
  }
  return {worst <= kCircleTol, fmt("max |y_csemm - y_ccmm| = %.3e over 1000 points", worst)};
}

Outcome diamond_limit() {
  const double a = 2.0 + 1e-9;
  double worst = 0.0;
  // Central segment between the two corner regions.
  for (double x : orc::linspace(0.2, 1.8, 1001)) {
    worst = std::max(worst, std::fabs(csemm_y_from_x(x, a, a) - (2.0 - x)));
  }
  return {worst <= kDiamondTol, fmt("max |y - (2 - x)| = %.3e on x in [0.2, 1.8]", worst)};
}

Outcome pareto_tail() {
  std::vector<double> ls, ld;
  for (double s : orc::linspace(10.0, 100.0, 500)) {
    ls.push_back(std::log(s));
    ld.push_back(std::log(ccmm_liquidity_sqrtprice(s, 1.0)));
  }
  const double slope = orc::ols_slope(ls, ld);
  const double hill = hill_tail_index(orc::pareto_sample(100'000, 3.0, 20240601), 1000);
  const bool ok = std::fabs(slope + 3.0) <= kSlopeTol && std::fabs(hill - 3.0) <= kHillTol;
  return {ok, fmt("log-log slope %.5f, Hill(k=1000, n=1e5) %.4f", slope, hill)};
}

Outcome analytic_fingerprints() {
  struct Check {
    const char* name;
    CurveSpec spec;
    Space space;
    PriceDomain domain;
    std::vector<double> grid;
    std::function<double(double)> closed_form;
  };
  const std::vector<Check> checks{
      {"ccmm sqrt-price", CurveSpec::ccmm(1.0), Space::SqrtPrice, PriceDomain::Positive,
       orc::linspace(0.1, 10.0, 400), [](double s) { return ccmm_liquidity_sqrtprice(s, 1.0); }},
      {"ccmm tick", CurveSpec::ccmm(1.0), Space::Tick, PriceDomain::Positive, orc::linspace(-6.0, 6.0, 241),
       [](double t) { return ccmm_liquidity_tick(t, 1.0); }},
      {"parabola sqrt-price", CurveSpec::parabola(2), Space::SqrtPrice, PriceDomain::Positive,
       orc::linspace(0.1, 10.0, 400),
       [](double s) { return parabola_liquidity_sqrtprice(s, PriceDomain::Positive); }},
      {"parabola tick", CurveSpec::parabola(2), Space::Tick, PriceDomain::Positive, orc::linspace(0.05, 5.0, 200),
       [](double t) { return parabola_liquidity_tick(t, PriceDomain::Positive); }},
      {"parabola negative sqrt-price", CurveSpec::parabola(2), Space::SqrtPrice, PriceDomain::Negative,
       orc::linspace(0.1, std::exp(-0.025), 200),
       [](double s) { return parabola_liquidity_sqrtprice(s, PriceDomain::Negative); }},
      {"parabola negative tick", CurveSpec::parabola(2), Space::Tick, PriceDomain::Negative,
       orc::linspace(-5.0, -0.05, 200), [](double t) { return parabola_liquidity_tick(t, PriceDomain::Negative); }},
  };
  bool ok = true;
  std::string detail;
  for (const Check& c : checks) {
    double worst = 0.0;
    for (const auto& smp : numeric_fingerprint(c.spec, c.grid, c.space, c.domain)) {
      const double ref = c.closed_form(smp.coord);
      worst = std::max(worst, std::fabs(smp.density - ref) / std::fabs(ref));
    }
    ok = ok && worst <= kFingerprintRelTol;
    detail += fmt("%s%s %.1e", detail.empty() ? "" : "; ", c.name, worst);
  }
  return {ok, "max rel err: " + detail};
}

// Draws an input amount inside the admissible band, keeping infinite bounds
// to a few multiples of the pool scale.
double draw_amount(orc::SplitMix& rng, const Interval& band, double scale) {
  const double lo = std::isfinite(band.lo) ? band.lo : -3.0 * scale;
  const double hi = std::isfinite(band.hi) ? band.hi : 3.0 * scale;
  return lo + (hi - lo) * rng.uniform(0.001, 0.999);
}

double center_of(const CurveSpec& spec) {
  switch (spec.family()) {
    case Family::CCMM: return spec.k();
    case Family::CSEMM: return spec.alpha();
    case Family::Parabola: return 1.0;
    case Family::CPMM: break;
  }
  return INFINITY;
}

double state_gap(const PoolState& a, const PoolState& b) {
  const double scale = std::max({1.0, std::fabs(a.x), std::fabs(a.y)});
  return std::max(std::fabs(a.x - b.x), std::fabs(a.y - b.y)) / scale;
}

Outcome swap_conservation() {
  struct Pool {
    CurveSpec spec;
    double x_lo;
    double x_hi;
    double scale;
  };
  const std::vector<Pool> pools{
      {CurveSpec::ccmm(1.7), 0.0, 3.4, 1.7},   {CurveSpec::csemm(3.0, 5.0), 0.0, 3.0, 4.0},
      {CurveSpec::parabola(2), 0.0, 4.0, 1.0}, {CurveSpec::cpmm(2.0), 0.05, 20.0, 2.0},
  };
  orc::SplitMix rng(0xA11CE);
  double worst_residual = 0.0, worst_roundtrip = 0.0, worst_compose = 0.0;
  std::string worst_family;
  bool ok = true;
  for (const Pool& pool : pools) {
    const double resid_scale = pool.spec.residual_scale();
    for (int i = 0; i < kFuzzSwaps; ++i) {
      const PoolState s0 = state_from_x(pool.spec, rng.uniform(pool.x_lo, pool.x_hi));
      const Token tok = rng.uniform() < 0.5 ? Token::X : Token::Y;
      const double amount = draw_amount(rng, input_bounds(pool.spec, s0, tok), pool.scale);
      const double fee = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0.0, 0.01);

      const SwapOutcome fwd = execute_swap(pool.spec, s0, {tok, amount, fee});
      const double r = std::fabs(fwd.result.residual_after) / resid_scale;
      worst_residual = std::max(worst_residual, r);

      // Zero-fee roundtrip: hand the output back as the other token. A y
      // payment names the side of the zero-price point the pool started on.
      const SwapOutcome there = fee == 0.0 ? fwd : execute_swap(pool.spec, s0, {tok, amount, 0.0});
      const Token back_tok = tok == Token::X ? Token::Y : Token::X;
      const Landing home = s0.x > center_of(pool.spec) ? Landing::Right : Landing::Left;
      const SwapOutcome back =
          execute_swap(pool.spec, there.state, {back_tok, there.result.amount_out, 0.0, home});
      const double rt = state_gap(s0, back.state);
      worst_roundtrip = std::max(worst_roundtrip, rt);

      // Two legs versus one trade of the combined size.
      const double split = rng.uniform(0.1, 0.9);
      const SwapOutcome leg1 = execute_swap(pool.spec, s0, {tok, split * amount, 0.0});
      const SwapOutcome leg2 = execute_swap(pool.spec, leg1.state, {tok, amount - split * amount, 0.0});
      const double out_scale = std::max(1.0, std::fabs(there.result.amount_out));
      const double cg = std::max(state_gap(there.state, leg2.state),
                                 std::fabs(leg1.result.amount_out + leg2.result.amount_out -
                                           there.result.amount_out) / out_scale);
      worst_compose = std::max(worst_compose, cg);

      if (r > kConservationTol || rt > kConservationTol || cg > kConservationTol) {
        if (ok) worst_family = fmt(" (first breach: %s x=%.17g %s %.17g)", pool.spec.describe().c_str(), s0.x,
                                   tok == Token::X ? "x_in" : "y_in", amount);
        ok = false;
      }
    }
  }
  return {ok, fmt("%d swaps x %zu families; max residual/scale %.2e, roundtrip %.2e, composition %.2e",
                  kFuzzSwaps, pools.size(), worst_residual, worst_roundtrip, worst_compose) +
                  worst_family};
}

Outcome zero_bound_crossing() {
  const CurveSpec ccmm = CurveSpec::ccmm(1.0);
  const PoolState start = state_at_price(ccmm, 0.5);
  const SwapResult cross = quote_exact_in(ccmm, start, {Token::X, 0.8, 0.0});
  const bool crosses = cross.price_before > 0.0 && cross.price_after < 0.0;
  const SwapResult deep = quote_exact_in(ccmm, state_at_price(ccmm, -0.5), {Token::X, 0.2, 0.0});
  const bool deposits_both = deep.amount_out < 0.0;

  const CurveSpec cpmm = CurveSpec::cpmm(1.0);
  orc::SplitMix rng(99);
  bool cpmm_positive = true;
  for (int i = 0; i < 2000; ++i) {
    const PoolState s = state_from_x(cpmm, rng.uniform(0.01, 10.0));
    const Token tok = rng.uniform() < 0.5 ? Token::X : Token::Y;
    const Interval band = input_bounds(cpmm, s, tok);
    const double amount = draw_amount(rng, band, 1.0);
    if (quote_exact_in(cpmm, s, {tok, amount, 0.0}).price_after <= 0.0) cpmm_positive = false;
    // One step past the band is refused rather than crossing.
    try {
      quote_exact_in(cpmm, s, {tok, band.lo * (1.0 + 1e-6) - 1e-12, 0.0});
      cpmm_positive = false;
    } catch (const Error&) {
    }
  }
  return {crosses && deposits_both && cpmm_positive,
          fmt("ccmm %.4f -> %.4f; negative-region amount_out %.4f; cpmm stays positive: %s", cross.price_before,
              cross.price_after, deep.amount_out, cpmm_positive ? "yes" : "no")};
}

Outcome greek_identities() {
  const double c = 2.0 + orc::kSqrt2;
  const std::vector<CurveSpec> specs{CurveSpec::ccmm(1.0), CurveSpec::ccmm(4.0), CurveSpec::csemm(c, c),
                                     CurveSpec::csemm(c, 5.0)};
  double env = 0.0, gam = 0.0, conc = -INFINITY;
  const auto grid = orc::linspace(-10.0, 10.0, 401);
  for (const CurveSpec& spec : specs) {
    for (double p : grid) {
      env = std::max(env, std::fabs(delta(spec, p) - orc::five_point([&](double q) { return lp_value(spec, q); },
                                                                    p, 1e-3)));
      gam = std::max(gam, std::fabs(gamma(spec, p) - orc::five_point([&](double q) { return delta(spec, q); },
                                                                    p, 1e-3)));
    }
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      conc = std::max(conc, lp_value(spec, grid[i - 1]) - 2.0 * lp_value(spec, grid[i]) +
                                lp_value(spec, grid[i + 1]));
    }
  }
  bool exact_scaling = true;
  for (const CurveSpec& spec : specs) {
    for (double p : grid) {
      const double t1 = theta(spec, p, {0.25});
      exact_scaling = exact_scaling && theta(spec, p, {0.5}) == 4.0 * t1 &&
                      t1 == -0.5 * 0.25 * 0.25 * gamma(spec, p);
    }
  }
  const bool ok = env <= kGreekTol && gam <= kGreekTol && conc <= kConcavityNoise && exact_scaling;
  return {ok, fmt("max |delta - dV/dp| %.2e, |gamma - d delta/dp| %.2e, max second difference %.2e, "
                  "theta scaling exact: %s",
                  env, gam, conc, exact_scaling ? "yes" : "no")};
}

Outcome negative_liquidity_branch() {
  const double plus = cpmm_x_from_price(4.0, 2.0, Sign::Plus);
  const double minus = cpmm_x_from_price(4.0, 2.0, Sign::Minus);
  return {plus == 1.0 && minus == -1.0, fmt("x(4; L=2, +) = %.17g, x(4; L=2, -) = %.17g", plus, minus)};
}

Outcome tail_widening() {
  const auto grid = orc::linspace(-14.0, 14.0, 2801);
  std::vector<double> fractions;
  bool ok = true;
  std::string detail;
  for (double a : {2.5, 3.0, 5.0, 10.0, 30.0}) {
    const double f = mass_fraction_beyond(numeric_fingerprint(CurveSpec::csemm(a, a), grid, Space::Tick), 2.0);
    if (!fractions.empty() && !(f > fractions.back())) ok = false;
    fractions.push_back(f);
    detail += fmt("%salpha=%g: %.4f", detail.empty() ? "" : ", ", a, f);
  }
  return {ok, "mass beyond |t|>2: " + detail};
}

Outcome series_analyzer() {
  const std::filesystem::path data = NEGAMM_TEST_DATA_DIR;
  const PriceSeries s = load_series(data / "negative_prices.csv");
  const auto stats = negative_price_stats(s);
  const bool counts = stats.size() == 2 && stats.at(2022).count_negative == 0 &&
                      stats.at(2023).count_negative == 2 && stats.at(2023).min_price == -4.0;
  std::ostringstream text;
  text << "date,price\n";
  orc::SplitMix rng(314);
  for (int d = 0; d < 365; ++d) {
    const int month = d / 28 + 1;
    if (month > 12) break;
    text << fmt("2019-%02d-%02d,%.4f\n", month, d % 28 + 1, rng.uniform(-150.0, 900.0));
  }
  std::istringstream in(text.str());
  const PriceSeries synth = parse_series(in);
  bool exact = true;
  for (const PriceSeries* series : {&s, &synth}) {
    const PriceSeries back = reconstruct_prices(series->points.front(), returns(*series));
    exact = exact && back.points.size() == series->points.size();
    for (std::size_t i = 0; exact && i < back.points.size(); ++i) {
      exact = back.points[i].price_nanos == series->points[i].price_nanos &&
              back.points[i].price() == series->points[i].price();
    }
  }
  return {counts && exact, fmt("fixture counts 2022:%zu 2023:%zu; exact reconstruction: %s",
                               stats.count(2022) ? stats.at(2022).count_negative : 0,
                               stats.count(2023) ? stats.at(2023).count_negative : 0, exact ? "yes" : "no")};
}

Outcome cli_determinism() {
  const std::string fixture = (std::filesystem::path(NEGAMM_TEST_DATA_DIR) / "negative_prices.csv").string();
  const std::vector<std::vector<std::string>> invocations{
      {"curve", "--family", "ccmm", "--k", "1", "--grid", "0:2:201", "--output", "csv"},
      {"curve", "--family", "csemm", "--alpha", "4", "--beta", "3", "--output", "json"},
      {"swap", "--family", "ccmm", "--price", "0.5", "--token-in", "x", "--amount", "0.8"},
      {"swap", "--family", "csemm", "--x", "1", "--token-in", "y", "--amount", "0.3", "--fee", "0.003"},
      {"fingerprint", "--family", "ccmm", "--k", "1", "--space", "tick", "--grid", "-6:6:241", "--gaussian"},
      {"fingerprint", "--family", "csemm", "--space", "circle", "--domain", "both", "--output", "json"},
      {"fingerprint", "--family", "parabola", "--space", "tick", "--domain", "both", "--method", "numeric"},
      {"payoff", "--family", "ccmm", "--grid", "-10:10:201", "--sigma-iv", "0.8"},
      {"payoff", "--family", "csemm", "--output", "json"},
      {"analyze", "--input", fixture, "--stat", "negative-days"},
      {"analyze", "--input", fixture, "--stat", "returns", "--mode", "percent"},
      {"analyze", "--input", fixture, "--stat", "squared-returns", "--output", "json"},
      {"analyze", "--input", fixture, "--stat", "summary"},
      {"compare", "--curve", "ccmm:k=1", "--curve", "csemm:alpha=3:beta=3", "--curve", "csemm:alpha=10:beta=10",
       "--space", "tick"},
  };
  std::size_t identical = 0;
  for (const auto& args : invocations) {
    std::string first;
    bool same = true;
    for (int rep = 0; rep < 3; ++rep) {
      std::ostringstream out, err;
      const int code = cli::run(args, out, err);
      const std::string body = std::to_string(code) + "\n" + out.str() + err.str();
      if (rep == 0) {
        first = body;
        same = code == cli::kExitOk;
      } else if (body != first) {
        same = false;
      }
    }
    identical += same ? 1 : 0;
  }
  return {identical == invocations.size(),
          fmt("%zu/%zu invocations succeed and are byte-identical over 3 runs", identical, invocations.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"circle recovery", circle_recovery},
      {"diamond limit", diamond_limit},
      {"pareto tail", pareto_tail},
      {"analytic fingerprints vs numeric oracle", analytic_fingerprints},
      {"swap conservation", swap_conservation},
      {"zero-bound crossing", zero_bound_crossing},
      {"greeks", greek_identities},
      {"negative-liquidity branch", negative_liquidity_branch},
      {"tail widening", tail_widening},
      {"series analyzer", series_analyzer},
      {"cli determinism", cli_determinism},
  };
  int failures = 0;
  int id = 0;
  for (const auto& [name, check] : criteria) {
    ++id;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", id - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
