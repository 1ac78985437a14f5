#include "cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "CLI11.hpp"
#include "cli/table.hpp"
#include "negamm/curves.hpp"
#include "negamm/fingerprint.hpp"
#include "negamm/payoff.hpp"
#include "negamm/series.hpp"
#include "negamm/swap.hpp"

namespace negamm::cli {

namespace {

/// Malformed flag values that CLI11 cannot catch by itself.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CurveOptions {
  std::string family;
  double k = 1.0;
  double alpha = 3.0;
  double beta = 3.0;
  int m = 2;
  double liquidity = 1.0;
};

struct OutputOptions {
  std::string format = "csv";
  std::string path;
};

struct Grid {
  double min = 0.0;
  double max = 0.0;
  int steps = 0;

  std::vector<double> points() const {
    std::vector<double> pts(static_cast<std::size_t>(steps));
    const double span = max - min;
    for (int i = 0; i < steps; ++i) {
      pts[static_cast<std::size_t>(i)] = min + span * static_cast<double>(i) / (steps - 1);
    }
    pts.back() = max;
    return pts;
  }
};

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + text + "' is not a number");
  }
  if (used != text.size()) throw UsageError(what + ": '" + text + "' is not a number");
  return v;
}

Grid parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw UsageError("--grid: expected min:max:steps, got '" + text + "'");
  }
  Grid g;
  g.min = parse_double(text.substr(0, first), "--grid min");
  g.max = parse_double(text.substr(first + 1, second - first - 1), "--grid max");
  const double steps = parse_double(text.substr(second + 1), "--grid steps");
  if (steps != std::floor(steps) || steps < 2 || steps > 10'000'000) {
    throw UsageError("--grid: steps must be an integer >= 2");
  }
  if (!std::isfinite(g.min) || !std::isfinite(g.max) || !(g.max > g.min)) {
    throw UsageError("--grid: need finite min < max");
  }
  g.steps = static_cast<int>(steps);
  return g;
}

CurveSpec build_curve(const CurveOptions& o) {
  const auto family = parse_family(o.family);
  if (!family) throw UsageError("--family: unknown family '" + o.family + "'");
  switch (*family) {
    case Family::CCMM: return CurveSpec::ccmm(o.k);
    case Family::CSEMM: return CurveSpec::csemm(o.alpha, o.beta);
    case Family::Parabola: return CurveSpec::parabola(o.m);
    case Family::CPMM: return CurveSpec::cpmm(o.liquidity);
  }
  throw UsageError("--family: unknown family");
}

/// `family[:key=value]...`, keys k, alpha, beta, m, L.
CurveSpec parse_curve_token(const std::string& token) {
  CurveOptions o;
  std::stringstream ss(token);
  std::string part;
  bool first = true;
  while (std::getline(ss, part, ':')) {
    if (first) {
      o.family = part;
      first = false;
      continue;
    }
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw UsageError("--curve: expected key=value in '" + token + "'");
    const std::string key = part.substr(0, eq);
    const std::string value = part.substr(eq + 1);
    if (key == "k") {
      o.k = parse_double(value, "--curve k");
    } else if (key == "alpha") {
      o.alpha = parse_double(value, "--curve alpha");
    } else if (key == "beta") {
      o.beta = parse_double(value, "--curve beta");
    } else if (key == "L") {
      o.liquidity = parse_double(value, "--curve L");
    } else if (key == "m") {
      const double m = parse_double(value, "--curve m");
      if (m != std::floor(m)) throw UsageError("--curve m must be an integer");
      o.m = static_cast<int>(m);
    } else {
      throw UsageError("--curve: unknown key '" + key + "' in '" + token + "'");
    }
  }
  return build_curve(o);
}

void add_curve_options(CLI::App* cmd, CurveOptions& o) {
  cmd->add_option("--family", o.family, "cpmm | ccmm | csemm | parabola")
      ->required()
      ->check(CLI::IsMember({"cpmm", "ccmm", "csemm", "parabola"}));
  cmd->add_option("--k", o.k, "CCMM radius (offsets pinned to k)")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "CSEMM x semi-axis (>= 2)")->capture_default_str();
  cmd->add_option("--beta", o.beta, "CSEMM y semi-axis (>= 2)")->capture_default_str();
  cmd->add_option("--m", o.m, "parabola exponent (even, >= 2)")->capture_default_str();
  cmd->add_option("--L", o.liquidity, "CPMM liquidity")->capture_default_str();
}

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--output", o.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output-path", o.path, "write to this file instead of standard output");
}

void add_params_option(CLI::App* cmd) {
  cmd->add_option("--params", "key = value file of flag names (applied before other flags)");
}

std::vector<std::pair<std::string, std::string>> curve_meta(const std::string& command,
                                                            const CurveSpec& spec) {
  return {{"command", command}, {"curve", spec.describe()}};
}

PriceDomain parse_domain(const std::string& s) {
  return s == "negative" ? PriceDomain::Negative : PriceDomain::Positive;
}

std::string domain_label(PriceDomain d) {
  return d == PriceDomain::Positive ? "positive_price" : "negative_price";
}

// ---------------------------------------------------------------- curve

struct CurveCommand {
  CurveOptions curve;
  OutputOptions output;
  std::string grid = "0:2:201";
  std::string branch = "lower";

  Table execute() const {
    const CurveSpec spec = build_curve(curve);
    const Grid g = parse_grid(grid);
    const bool upper = branch == "upper";
    if (upper && spec.family() != Family::CCMM && spec.family() != Family::CSEMM) {
      throw UsageError("--branch upper is only defined for ccmm and csemm");
    }
    Table t;
    t.columns = {"x", "y"};
    t.meta = curve_meta("curve", spec);
    t.meta.emplace_back("branch", branch);
    for (double x : g.points()) {
      double y;
      if (!upper) {
        y = state_from_x(spec, x).y;
      } else if (spec.family() == Family::CCMM) {
        y = ccmm_y_from_x(x, spec.k(), Branch::Upper);
      } else {
        y = csemm_y_from_x(x, spec.alpha(), spec.beta(), Branch::Upper);
      }
      t.rows.push_back({x, y});
    }
    return t;
  }
};

// ----------------------------------------------------------------- swap

struct SwapCommand {
  CurveOptions curve;
  OutputOptions output;
  std::optional<double> x;
  std::optional<double> price;
  std::string token_in = "x";
  double amount = 0.0;
  double fee = 0.0;
  std::string landing = "same";

  Table execute() const {
    const CurveSpec spec = build_curve(curve);
    if (x.has_value() == price.has_value()) {
      throw UsageError("swap: give exactly one of --x or --price to place the pool");
    }
    const PoolState state = x ? state_from_x(spec, *x) : state_at_price(spec, *price);
    SwapRequest req;
    req.token_in = token_in == "y" ? Token::Y : Token::X;
    req.amount_in = amount;
    req.fee = fee;
    req.landing = landing == "left" ? Landing::Left : landing == "right" ? Landing::Right : Landing::SameSide;
    const SwapOutcome outcome = execute_swap(spec, state, req);
    const SwapResult& r = outcome.result;
    Table t;
    t.columns = {"token_in",  "amount_in",      "amount_out", "fee_amount",
                 "price_before", "price_after", "residual_after", "x_before",
                 "y_before",  "x_after",        "y_after"};
    t.meta = curve_meta("swap", spec);
    t.meta.emplace_back("amount_out_sign",
                        "negative amount_out means the trader also deposits the counter token");
    t.rows.push_back({token_in, r.amount_in, r.amount_out, r.fee_amount, r.price_before,
                      r.price_after, r.residual_after, state.x, state.y, outcome.state.x,
                      outcome.state.y});
    return t;
  }
};

// ---------------------------------------------------------- fingerprint

double analytic_density(const CurveSpec& spec, double c, bool tick_coord, PriceDomain domain) {
  const Sign sign = domain == PriceDomain::Positive ? Sign::Plus : Sign::Minus;
  switch (spec.family()) {
    case Family::CCMM:
      return tick_coord ? ccmm_liquidity_tick(c, spec.k(), sign)
                        : ccmm_liquidity_sqrtprice(c, spec.k(), sign);
    case Family::Parabola:
      if (spec.m() != 2) {
        throw Error(ErrorKind::Domain, "fingerprint", "parabola fingerprints exist for m = 2 only");
      }
      return tick_coord ? parabola_liquidity_tick(c, domain) : parabola_liquidity_sqrtprice(c, domain);
    case Family::CPMM:
      if (domain == PriceDomain::Negative) {
        throw Error(ErrorKind::Domain, "fingerprint", "cpmm has no negative-price states");
      }
      if (!tick_coord && !(c > 0.0)) {
        throw Error(ErrorKind::Domain, "fingerprint", "sqrt-price must be positive");
      }
      // y = L s, so the density is flat in sqrt-price.
      return spec.liquidity();
    case Family::CSEMM:
      break;
  }
  throw Error(ErrorKind::Parameter, "fingerprint",
              "no closed-form fingerprint for " + spec.describe() + "; use --method numeric");
}

struct DensityEvaluator {
  CurveSpec spec;
  bool numeric;
  Reserve reserve;

  double operator()(double c, bool tick_coord, PriceDomain domain) const {
    if (!numeric) return analytic_density(spec, c, tick_coord, domain);
    const double grid[] = {c};
    return numeric_fingerprint(spec, grid, tick_coord ? Space::Tick : Space::SqrtPrice, domain,
                               reserve)
        .front()
        .density;
  }
};

DensityEvaluator make_evaluator(const CurveSpec& spec, const std::string& method,
                                const std::string& reserve) {
  const bool has_closed_form = spec.family() != Family::CSEMM;
  bool numeric = method == "numeric" || (method == "auto" && (!has_closed_form || reserve == "x"));
  if (method == "analytic" && reserve == "x") {
    throw UsageError("--reserve x requires the numeric method");
  }
  return DensityEvaluator{spec, numeric, reserve == "x" ? Reserve::X : Reserve::Y};
}

struct FingerprintCommand {
  CurveOptions curve;
  OutputOptions output;
  std::string grid = "-6:6:241";
  std::string space = "tick";
  std::string domain = "positive";
  std::string method = "auto";
  std::string reserve = "y";
  bool gaussian = false;
  std::optional<double> gauss_mu;
  std::optional<double> gauss_sigma;
  std::optional<double> gauss_mass;

  Table execute() const {
    const CurveSpec spec = build_curve(curve);
    const Grid g = parse_grid(grid);
    const DensityEvaluator density = make_evaluator(spec, method, reserve);
    const bool tick_coord = space != "sqrtprice";

    const int explicit_gauss = gauss_mu.has_value() + gauss_sigma.has_value() + gauss_mass.has_value();
    if (explicit_gauss != 0 && explicit_gauss != 3) {
      throw UsageError("--gauss-mu, --gauss-sigma and --gauss-mass go together");
    }
    const bool with_gaussian = gaussian || explicit_gauss == 3;
    if (with_gaussian && !tick_coord) throw UsageError("--gaussian needs --space tick or circle");

    GaussianFit fit;
    if (explicit_gauss == 3) {
      fit = GaussianFit{*gauss_mu, *gauss_sigma, *gauss_mass};
    } else if (with_gaussian) {
      const Grid window{-20.0, 20.0, 4001};
      const auto pts = window.points();
      fit = matched_gaussian(numeric_fingerprint(spec, pts, Space::Tick));
    }

    std::vector<PriceDomain> domains;
    if (domain == "both") {
      domains = {PriceDomain::Positive, PriceDomain::Negative};
    } else {
      domains = {parse_domain(domain)};
    }
    const bool skip_undefined = domain == "both";

    Table t;
    t.columns = {"coord", "density", "domain_sign"};
    if (with_gaussian) t.columns.push_back("gaussian");
    t.meta = curve_meta("fingerprint", spec);
    t.meta.emplace_back("space", space);
    t.meta.emplace_back("method", density.numeric ? "numeric" : "analytic");
    t.meta.emplace_back("density_units", "reserve per unit sqrt-price");
    if (with_gaussian) {
      t.meta.emplace_back("gaussian", "mu=" + format_number(fit.mu) + " sigma=" +
                                          format_number(fit.sigma) + " mass=" + format_number(fit.mass));
    }

    for (PriceDomain d : domains) {
      for (double c : g.points()) {
        double value;
        try {
          value = density(c, tick_coord, d);
        } catch (const Error& e) {
          const bool undefined_here =
              e.kind() == ErrorKind::Domain || e.kind() == ErrorKind::Singularity;
          if (skip_undefined && undefined_here) continue;
          throw;
        }
        const double coord = space == "circle" ? circle_map_tick(c, d) : c;
        std::vector<Cell> row{coord, value, domain_label(d)};
        // The comparator lives on positive prices only.
        if (with_gaussian) {
          row.emplace_back(d == PriceDomain::Positive ? gaussian_fingerprint(c, fit.mu, fit.sigma, fit.mass) : 0.0);
        }
        t.rows.push_back(std::move(row));
      }
    }
    return t;
  }
};

// --------------------------------------------------------------- payoff

struct PayoffCommand {
  CurveOptions curve;
  OutputOptions output;
  std::string grid = "-10:10:201";
  double sigma_iv = 0.0;

  Table execute() const {
    const CurveSpec spec = build_curve(curve);
    const Grid g = parse_grid(grid);
    const VolatilityInput vol{sigma_iv};
    Table t;
    t.columns = {"p", "value", "delta", "gamma", "theta"};
    t.meta = curve_meta("payoff", spec);
    t.meta.emplace_back("sigma_iv", format_number(sigma_iv));
    t.meta.emplace_back("volatility", "arithmetic (absolute price units per sqrt time)");
    t.meta.emplace_back("value_numeraire", "y");
    t.meta.emplace_back("theta_convention",
                        "theta = -(sigma_iv^2/2) gamma; positive = yield needed to offset concavity");
    for (double p : g.points()) {
      const GreeksPoint pt = greeks(spec, p, vol);
      t.rows.push_back({pt.p, pt.value, pt.delta, pt.gamma, pt.theta});
    }
    return t;
  }
};

// -------------------------------------------------------------- analyze

struct AnalyzeCommand {
  OutputOptions output;
  std::string input;
  std::string stat = "negative-days";
  std::string mode = "arithmetic";
  double epsilon = 1e-9;
  long long top_k = 0;

  Table execute() const {
    const PriceSeries series = load_series(input);
    const ReturnMode rmode = mode == "percent" ? ReturnMode::Percent : ReturnMode::ArithmeticDiff;
    Table t;
    t.meta = {{"command", "analyze"}, {"stat", stat}};
    if (stat == "negative-days") {
      t.columns = {"year", "count_negative", "min_price"};
      for (const auto& [year, s] : negative_price_stats(series)) {
        t.rows.push_back({static_cast<long long>(year), static_cast<long long>(s.count_negative),
                          s.min_price});
      }
    } else if (stat == "returns" || stat == "squared-returns") {
      const ReturnSeries rs = returns(series, rmode, epsilon);
      t.meta.emplace_back("mode", mode);
      t.meta.emplace_back("skipped", std::to_string(rs.skipped));
      if (stat == "returns") {
        t.columns = {"date", "return"};
        for (const ReturnPoint& r : rs.values) t.rows.push_back({r.date.to_string(), r.value});
      } else {
        t.columns = {"date", "squared_return"};
        for (const ReturnPoint& r : squared_returns(rs)) t.rows.push_back({r.date.to_string(), r.value});
      }
    } else if (stat == "hill") {
      if (top_k <= 0) throw UsageError("--stat hill needs --top-k");
      const ReturnSeries rs = returns(series, rmode, epsilon);
      t.meta.emplace_back("mode", mode);
      t.columns = {"top_k", "tail_index"};
      t.rows.push_back({top_k, hill_tail_index(rs, static_cast<std::size_t>(top_k))});
    } else {
      t.columns = {"key", "value"};
      std::size_t negatives = 0;
      double lo = series.points.front().price();
      double hi = lo;
      for (const PricePoint& pt : series.points) {
        negatives += pt.price_nanos < 0;
        lo = std::min(lo, pt.price());
        hi = std::max(hi, pt.price());
      }
      t.rows.push_back({std::string("points"), static_cast<long long>(series.points.size())});
      t.rows.push_back({std::string("negative_days"), static_cast<long long>(negatives)});
      t.rows.push_back({std::string("min_price"), lo});
      t.rows.push_back({std::string("max_price"), hi});
      t.rows.push_back({std::string("first_date"), series.points.front().date.to_string()});
      t.rows.push_back({std::string("last_date"), series.points.back().date.to_string()});
    }
    return t;
  }
};

// -------------------------------------------------------------- compare

struct CompareCommand {
  OutputOptions output;
  std::vector<std::string> curves;
  std::string grid = "-6:6:241";
  std::string space = "tick";
  std::string domain = "positive";
  std::string method = "auto";

  Table execute() const {
    const Grid g = parse_grid(grid);
    const PriceDomain d = parse_domain(domain);
    const bool tick_coord = space == "tick";
    std::vector<DensityEvaluator> evaluators;
    Table t;
    t.columns = {"coord"};
    t.meta = {{"command", "compare"}, {"space", space}, {"domain", domain}};
    for (const std::string& token : curves) {
      const CurveSpec spec = parse_curve_token(token);
      evaluators.push_back(make_evaluator(spec, method, "y"));
      t.columns.push_back(token);
    }
    for (double c : g.points()) {
      std::vector<Cell> row{c};
      for (const auto& eval : evaluators) row.emplace_back(eval(c, tick_coord, d));
      t.rows.push_back(std::move(row));
    }
    return t;
  }
};

// ------------------------------------------------------------ dispatch

std::string trim_copy(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Expands `--params <path>` into `--key=value` tokens placed right after the
/// subcommand, so explicit flags given later on the command line win.
std::vector<std::string> expand_params(std::span<const std::string> args) {
  std::vector<std::string> expanded(args.begin(), args.end());
  std::optional<std::string> path;
  for (std::size_t i = 0; i < expanded.size(); ++i) {
    if (expanded[i] == "--params" && i + 1 < expanded.size()) {
      path = expanded[i + 1];
    } else if (expanded[i].rfind("--params=", 0) == 0) {
      path = expanded[i].substr(9);
    }
  }
  if (!path || expanded.empty()) return expanded;
  std::ifstream in(*path);
  if (!in) throw Error(ErrorKind::Io, "cli", "cannot open params file " + *path);
  std::vector<std::string> tokens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim_copy(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(*path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim_copy(line.substr(0, eq));
    const std::string value = trim_copy(line.substr(eq + 1));
    if (key.empty() || key.front() == '-' || key == "params") {
      throw UsageError(*path + ":" + std::to_string(line_no) + ": invalid key '" + key + "'");
    }
    tokens.push_back("--" + key + "=" + value);
  }
  expanded.insert(expanded.begin() + 1, tokens.begin(), tokens.end());
  return expanded;
}

void emit(const Table& table, const OutputOptions& output, std::ostream& out) {
  std::ostringstream buffer;
  if (output.format == "json") {
    write_json(table, buffer);
  } else {
    write_csv(table, buffer);
  }
  if (output.path.empty()) {
    out << buffer.str();
    return;
  }
  std::ofstream file(output.path, std::ios::binary);
  if (!file) throw Error(ErrorKind::Io, "cli", "cannot write " + output.path);
  file << buffer.str();
  if (!file) throw Error(ErrorKind::Io, "cli", "write failed for " + output.path);
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Negative-price AMM invariants: curves, swaps, fingerprints, payoffs, series"};
  app.name("negamm");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CurveCommand curve_cmd;
  SwapCommand swap_cmd;
  FingerprintCommand fp_cmd;
  PayoffCommand payoff_cmd;
  AnalyzeCommand analyze_cmd;
  CompareCommand compare_cmd;

  auto* curve = app.add_subcommand("curve", "sample (x, y) points of an invariant");
  add_curve_options(curve, curve_cmd.curve);
  add_output_options(curve, curve_cmd.output);
  add_params_option(curve);
  curve->add_option("--grid", curve_cmd.grid, "x grid min:max:steps")->capture_default_str();
  curve->add_option("--branch", curve_cmd.branch, "lower | upper")
      ->check(CLI::IsMember({"lower", "upper"}))
      ->capture_default_str();

  auto* swap = app.add_subcommand("swap", "quote an exact-input swap");
  add_curve_options(swap, swap_cmd.curve);
  add_output_options(swap, swap_cmd.output);
  add_params_option(swap);
  swap->add_option("--x", swap_cmd.x, "initial x reserve (lower branch)");
  swap->add_option("--price", swap_cmd.price, "initial marginal price of x");
  swap->add_option("--token-in", swap_cmd.token_in, "x | y")
      ->check(CLI::IsMember({"x", "y"}))
      ->capture_default_str();
  swap->add_option("--amount", swap_cmd.amount, "signed input amount")->required();
  swap->add_option("--fee", swap_cmd.fee, "proportional input fee in [0, 1)")->capture_default_str();
  swap->add_option("--landing", swap_cmd.landing,
                   "side of the zero-price point a y input lands on: same | left | right")
      ->check(CLI::IsMember({"same", "left", "right"}))
      ->capture_default_str();

  auto* fp = app.add_subcommand("fingerprint", "liquidity fingerprint samples");
  add_curve_options(fp, fp_cmd.curve);
  add_output_options(fp, fp_cmd.output);
  add_params_option(fp);
  fp->add_option("--grid", fp_cmd.grid, "coordinate grid min:max:steps")->capture_default_str();
  fp->add_option("--space", fp_cmd.space, "sqrtprice | tick | circle (grid in ticks)")
      ->check(CLI::IsMember({"sqrtprice", "tick", "circle"}))
      ->capture_default_str();
  fp->add_option("--domain", fp_cmd.domain, "positive | negative | both")
      ->check(CLI::IsMember({"positive", "negative", "both"}))
      ->capture_default_str();
  fp->add_option("--method", fp_cmd.method, "auto | analytic | numeric")
      ->check(CLI::IsMember({"auto", "analytic", "numeric"}))
      ->capture_default_str();
  fp->add_option("--reserve", fp_cmd.reserve, "reserve differentiated numerically: x | y")
      ->check(CLI::IsMember({"x", "y"}))
      ->capture_default_str();
  fp->add_flag("--gaussian", fp_cmd.gaussian, "add a moment-matched Gaussian column");
  fp->add_option("--gauss-mu", fp_cmd.gauss_mu);
  fp->add_option("--gauss-sigma", fp_cmd.gauss_sigma);
  fp->add_option("--gauss-mass", fp_cmd.gauss_mass);

  auto* payoff = app.add_subcommand("payoff", "LP value and Greeks over a price grid");
  add_curve_options(payoff, payoff_cmd.curve);
  add_output_options(payoff, payoff_cmd.output);
  add_params_option(payoff);
  payoff->add_option("--grid", payoff_cmd.grid, "price grid min:max:steps")->capture_default_str();
  payoff->add_option("--sigma-iv", payoff_cmd.sigma_iv, "arithmetic volatility")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "statistics of a date,price CSV");
  add_output_options(analyze, analyze_cmd.output);
  add_params_option(analyze);
  analyze->add_option("--input", analyze_cmd.input, "CSV with header date,price")->required();
  analyze->add_option("--stat", analyze_cmd.stat,
                      "negative-days | returns | squared-returns | hill | summary")
      ->check(CLI::IsMember({"negative-days", "returns", "squared-returns", "hill", "summary"}))
      ->capture_default_str();
  analyze->add_option("--mode", analyze_cmd.mode, "arithmetic | percent")
      ->check(CLI::IsMember({"arithmetic", "percent"}))
      ->capture_default_str();
  analyze->add_option("--epsilon", analyze_cmd.epsilon, "percent-mode base guard")
      ->capture_default_str();
  analyze->add_option("--top-k", analyze_cmd.top_k, "Hill estimator order statistics");

  auto* compare = app.add_subcommand("compare", "aligned fingerprints for several curves");
  add_output_options(compare, compare_cmd.output);
  add_params_option(compare);
  compare->add_option("--curve", compare_cmd.curves, "family[:key=value]..., repeatable")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  compare->add_option("--grid", compare_cmd.grid, "coordinate grid min:max:steps")
      ->capture_default_str();
  compare->add_option("--space", compare_cmd.space, "sqrtprice | tick")
      ->check(CLI::IsMember({"sqrtprice", "tick"}))
      ->capture_default_str();
  compare->add_option("--domain", compare_cmd.domain, "positive | negative")
      ->check(CLI::IsMember({"positive", "negative"}))
      ->capture_default_str();
  compare->add_option("--method", compare_cmd.method, "auto | numeric")
      ->check(CLI::IsMember({"auto", "numeric"}))
      ->capture_default_str();

  try {
    std::vector<std::string> argv = expand_params(args);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "negamm: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "negamm: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "negamm: " << e.what() << '\n';
    return kExitFailure;
  }

  try {
    Table table;
    const OutputOptions* output = nullptr;
    if (curve->parsed()) {
      table = curve_cmd.execute();
      output = &curve_cmd.output;
    } else if (swap->parsed()) {
      table = swap_cmd.execute();
      output = &swap_cmd.output;
    } else if (fp->parsed()) {
      table = fp_cmd.execute();
      output = &fp_cmd.output;
    } else if (payoff->parsed()) {
      table = payoff_cmd.execute();
      output = &payoff_cmd.output;
    } else if (analyze->parsed()) {
      table = analyze_cmd.execute();
      output = &analyze_cmd.output;
    } else {
      table = compare_cmd.execute();
      output = &compare_cmd.output;
    }
    emit(table, *output, out);
  } catch (const UsageError& e) {
    err << "negamm: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "negamm: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace negamm::cli
