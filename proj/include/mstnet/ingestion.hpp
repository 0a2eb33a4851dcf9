#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mstnet/date.hpp"
#include "mstnet/matrix.hpp"

namespace mstnet {

struct PricePoint {
  Date date;
  double close = 0.0;

  friend bool operator==(const PricePoint&, const PricePoint&) = default;
};

/// Closing prices of one company; dates strictly increasing, prices > 0.
struct PriceSeries {
  std::string ticker;
  std::vector<PricePoint> observations;

  friend bool operator==(const PriceSeries&, const PriceSeries&) = default;
};

/// Layout of the input table: a header row `date,ticker,close` followed by one
/// record per line.
struct FormatSpec {
  char delimiter = ',';
};

struct RowDiagnostic {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string message;
};

struct ParseResult {
  std::vector<PriceSeries> series;  // sorted by ticker
  std::vector<RowDiagnostic> rejected;
};

/// Throws Error(Format) on a missing or malformed header and
/// Error(DuplicateRecord) on a repeated (ticker, date) pair. Rows with bad
/// dates, bad or non-positive prices, or a wrong field count are skipped and
/// reported in `rejected`.
ParseResult parse_price_table(std::istream& in, const FormatSpec& format = {});
ParseResult parse_price_table(std::string_view text, const FormatSpec& format = {});

/// Inclusive date range.
struct Period {
  Date start;
  Date end;
};

/// Full range covered by the observations of `series`; Error(InsufficientData)
/// if there are none.
Period observed_period(std::span<const PriceSeries> series);

/// Companies x trading days, no missing cells.
struct PricePanel {
  std::vector<std::string> tickers;
  std::vector<Date> dates;
  Matrix prices;  // tickers.size() x dates.size()

  friend bool operator==(const PricePanel&, const PricePanel&) = default;
};

struct AlignResult {
  PricePanel panel;
  std::vector<std::string> dropped;  // companies not present on every trading day
};

/// Keeps the companies that have a price on every trading day of `period`,
/// where the trading-day axis is the union of dates observed in the period.
AlignResult align_and_filter(std::span<const PriceSeries> series, const Period& period);

/// Inverse view of a panel, one series per row.
std::vector<PriceSeries> to_series(const PricePanel& panel);

struct ReturnPanel {
  std::vector<std::string> tickers;
  std::vector<Date> dates;  // date on which each return is realized
  Matrix returns;           // tickers.size() x dates.size()

  std::size_t companies() const noexcept { return tickers.size(); }
  std::size_t columns() const noexcept { return dates.size(); }

  friend bool operator==(const ReturnPanel&, const ReturnPanel&) = default;
};

/// Daily log returns: ln(p[t+1]) - ln(p[t]).
ReturnPanel log_returns(const PricePanel& panel);

/// Columns [begin, end) of `panel`.
ReturnPanel slice_columns(const ReturnPanel& panel, std::size_t begin, std::size_t end);

/// Rows listed in `keep` (ascending indices).
ReturnPanel select_rows(const ReturnPanel& panel, std::span<const std::size_t> keep);

}  // namespace mstnet
