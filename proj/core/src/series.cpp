#include "negamm/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace negamm {

namespace {

// Keeps every difference of two prices inside int64.
constexpr std::int64_t kMaxNanos = 1'000'000'000'000'000'000 / 2;

[[noreturn]] void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, "series_analysis", message);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool leap_year(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && leap_year(y) ? 29 : kDays[m - 1];
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool parse_date(std::string_view s, Date& out) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  Date d;
  if (!parse_int(s.substr(0, 4), d.year) || !parse_int(s.substr(5, 2), d.month) ||
      !parse_int(s.substr(8, 2), d.day)) {
    return false;
  }
  if (d.month < 1 || d.month > 12) return false;
  if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return false;
  out = d;
  return true;
}

// Plain decimal: optional sign, digits, optional fraction of at most 9 digits.
bool parse_decimal_nanos(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto dot = s.find('.');
  const std::string_view whole = s.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (whole.empty() && frac.empty()) return false;
  if (frac.size() > 9) return false;
  if (dot != std::string_view::npos && frac.empty() && whole.empty()) return false;
  std::int64_t units = 0;
  for (char c : whole) {
    if (c < '0' || c > '9') return false;
    units = units * 10 + (c - '0');
    if (units > kMaxNanos / kNanosPerUnit) return false;
  }
  std::int64_t nanos = 0;
  std::int64_t place = kNanosPerUnit;
  for (char c : frac) {
    if (c < '0' || c > '9') return false;
    place /= 10;
    nanos += (c - '0') * place;
  }
  const std::int64_t total = units * kNanosPerUnit + nanos;
  out = negative ? -total : total;
  return true;
}

std::string two_digits(int v) {
  std::string s = std::to_string(v);
  return s.size() < 2 ? "0" + s : s;
}

}  // namespace

std::string Date::to_string() const {
  std::string y = std::to_string(year);
  while (y.size() < 4) y = "0" + y;
  return y + "-" + two_digits(month) + "-" + two_digits(day);
}

PriceSeries parse_series(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  PriceSeries series;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (line_no == 1 && view.size() >= 3 && view.substr(0, 3) == "\xEF\xBB\xBF") {
      view.remove_prefix(3);
    }
    if (view.empty()) continue;
    if (!header_seen) {
      if (view != "date,price") {
        fail(ErrorKind::Parse, source + ":" + std::to_string(line_no) +
                                   ": expected header 'date,price', got '" + std::string(view) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = view.find(',');
    if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
      fail(ErrorKind::Parse, source + ":" + std::to_string(line_no) + ": expected two columns");
    }
    PricePoint point;
    if (!parse_date(trim(view.substr(0, comma)), point.date)) {
      fail(ErrorKind::Parse,
           source + ":" + std::to_string(line_no) + ": column 1 (date) is not a valid YYYY-MM-DD date");
    }
    if (!parse_decimal_nanos(trim(view.substr(comma + 1)), point.price_nanos)) {
      fail(ErrorKind::Parse, source + ":" + std::to_string(line_no) +
                                 ": column 2 (price) is not a decimal with at most 9 fractional digits");
    }
    if (!series.points.empty() && !(series.points.back().date < point.date)) {
      fail(ErrorKind::Monotonicity, source + ":" + std::to_string(line_no) + ": date " +
                                        point.date.to_string() + " does not follow " +
                                        series.points.back().date.to_string());
    }
    series.points.push_back(point);
  }
  if (in.bad()) fail(ErrorKind::Io, source + ": read failed");
  if (series.points.empty()) fail(ErrorKind::EmptyFile, source + ": no price rows");
  return series;
}

PriceSeries load_series(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  return parse_series(in, path.string());
}

ReturnSeries returns(const PriceSeries& series, ReturnMode mode, double epsilon) {
  if (series.points.size() < 2) {
    fail(ErrorKind::InsufficientData, "returns need at least 2 prices");
  }
  ReturnSeries rs;
  rs.mode = mode;
  rs.values.reserve(series.points.size() - 1);
  for (std::size_t i = 1; i < series.points.size(); ++i) {
    const PricePoint& prev = series.points[i - 1];
    const PricePoint& cur = series.points[i];
    const std::int64_t diff = cur.price_nanos - prev.price_nanos;
    if (mode == ReturnMode::ArithmeticDiff) {
      rs.values.push_back(
          ReturnPoint{cur.date, static_cast<double>(diff) / static_cast<double>(kNanosPerUnit), diff});
      continue;
    }
    const double base = std::fabs(prev.price());
    if (base < epsilon) {
      ++rs.skipped;
      continue;
    }
    rs.values.push_back(ReturnPoint{
        cur.date, static_cast<double>(diff) / static_cast<double>(kNanosPerUnit) / base, 0});
  }
  return rs;
}

PriceSeries reconstruct_prices(const PricePoint& first, const ReturnSeries& diffs) {
  if (diffs.mode != ReturnMode::ArithmeticDiff) {
    fail(ErrorKind::Parameter, "only arithmetic returns can be summed back into prices");
  }
  PriceSeries out;
  out.points.reserve(diffs.values.size() + 1);
  out.points.push_back(first);
  std::int64_t level = first.price_nanos;
  for (const ReturnPoint& r : diffs.values) {
    level += r.diff_nanos;
    out.points.push_back(PricePoint{r.date, level});
  }
  return out;
}

std::vector<ReturnPoint> squared_returns(const ReturnSeries& rs) {
  std::vector<ReturnPoint> out;
  out.reserve(rs.values.size());
  for (const ReturnPoint& r : rs.values) out.push_back(ReturnPoint{r.date, r.value * r.value, 0});
  return out;
}

std::map<int, YearStats> negative_price_stats(const PriceSeries& series) {
  std::map<int, YearStats> stats;
  for (const PricePoint& point : series.points) {
    auto [it, inserted] = stats.try_emplace(point.date.year);
    YearStats& year = it->second;
    const double price = point.price();
    if (inserted || price < year.min_price) year.min_price = price;
    ++year.count_total;
    if (point.price_nanos < 0) ++year.count_negative;
  }
  return stats;
}

double hill_tail_index(std::span<const double> values, std::size_t top_k) {
  if (top_k < 2 || top_k > values.size() / 2) {
    fail(ErrorKind::InsufficientData, "hill estimator needs 2 <= top_k <= n/2 (n = " +
                                          std::to_string(values.size()) +
                                          ", top_k = " + std::to_string(top_k) + ")");
  }
  std::vector<double> magnitudes;
  magnitudes.reserve(values.size());
  for (double v : values) {
    if (!std::isfinite(v)) fail(ErrorKind::Domain, "hill estimator input must be finite");
    magnitudes.push_back(std::fabs(v));
  }
  std::nth_element(magnitudes.begin(), magnitudes.begin() + top_k, magnitudes.end(),
                   std::greater<>());
  const double threshold = magnitudes[top_k];
  if (!(threshold > 0.0)) {
    fail(ErrorKind::Degenerate, "hill estimator threshold order statistic is zero");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < top_k; ++i) sum += std::log(magnitudes[i] / threshold);
  if (!(sum > 0.0)) fail(ErrorKind::Degenerate, "all log-ratios are zero");
  return static_cast<double>(top_k) / sum;
}

double hill_tail_index(const ReturnSeries& rs, std::size_t top_k) {
  std::vector<double> values;
  values.reserve(rs.values.size());
  for (const ReturnPoint& r : rs.values) values.push_back(r.value);
  return hill_tail_index(values, top_k);
}

}  // namespace negamm
