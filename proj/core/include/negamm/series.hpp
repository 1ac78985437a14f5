#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "negamm/error.hpp"

namespace negamm {

/// Calendar date (UTC), parsed from ISO-8601 YYYY-MM-DD.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;
  std::string to_string() const;
};

/// Decimal prices are held exactly as integer multiples of 1e-9 so that
/// differencing and re-summing a series is lossless.
inline constexpr std::int64_t kNanosPerUnit = 1'000'000'000;

struct PricePoint {
  Date date;
  std::int64_t price_nanos = 0;

  double price() const noexcept {
    return static_cast<double>(price_nanos) / static_cast<double>(kNanosPerUnit);
  }
};

/// Timestamps strictly increasing; negative prices are legal.
struct PriceSeries {
  std::vector<PricePoint> points;
};

/// Reads a `date,price` CSV. Errors name the 1-based line of the file.
PriceSeries load_series(const std::filesystem::path& path);
PriceSeries parse_series(std::istream& in, const std::string& source = "<stream>");

enum class ReturnMode { ArithmeticDiff, Percent };

struct ReturnPoint {
  Date date;
  double value = 0.0;
  /// Exact difference in nanos (arithmetic mode only).
  std::int64_t diff_nanos = 0;
};

struct ReturnSeries {
  ReturnMode mode = ReturnMode::ArithmeticDiff;
  std::vector<ReturnPoint> values;
  std::size_t skipped = 0;
};

/// Arithmetic: p_i - p_{i-1}. Percent: (p_i - p_{i-1}) / |p_{i-1}|, skipping
/// pairs whose base magnitude is below `epsilon`.
ReturnSeries returns(const PriceSeries& series, ReturnMode mode = ReturnMode::ArithmeticDiff,
                     double epsilon = 1e-9);

/// Cumulative sum of arithmetic returns starting from `first`.
PriceSeries reconstruct_prices(const PricePoint& first, const ReturnSeries& diffs);

std::vector<ReturnPoint> squared_returns(const ReturnSeries& rs);

struct YearStats {
  std::size_t count_negative = 0;
  std::size_t count_total = 0;
  double min_price = 0.0;
};

/// Per calendar year: number of strictly negative prices and the minimum.
std::map<int, YearStats> negative_price_stats(const PriceSeries& series);

/// Hill estimator on |values|: with X(1) >= X(2) >= ... the order
/// statistics, returns k / sum_{i<=k} ln(X(i) / X(k+1)).
double hill_tail_index(std::span<const double> values, std::size_t top_k);
double hill_tail_index(const ReturnSeries& rs, std::size_t top_k);

}  // namespace negamm
