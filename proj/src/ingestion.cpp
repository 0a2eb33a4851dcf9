#include "mstnet/ingestion.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "mstnet/error.hpp"

namespace mstnet {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(delim, pos);
    if (next == std::string_view::npos) {
      fields.push_back(trim(line.substr(pos)));
      return fields;
    }
    fields.push_back(trim(line.substr(pos, next - pos)));
    pos = next + 1;
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool valid_header(const std::vector<std::string_view>& fields) {
  if (fields.size() != 3) return false;
  const auto price = lower(fields[2]);
  return lower(fields[0]) == "date" && lower(fields[1]) == "ticker" &&
         (price == "close" || price == "price");
}

}  // namespace

ParseResult parse_price_table(std::istream& in, const FormatSpec& format) {
  std::string line;
  std::size_t line_no = 0;

  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (trim(view).empty()) continue;
    if (!valid_header(split(view, format.delimiter))) {
      throw Error(ErrorKind::Format,
                  "line " + std::to_string(line_no) + ": expected header 'date" +
                      format.delimiter + "ticker" + format.delimiter + "close', got '" +
                      std::string(trim(view)) + "'");
    }
    have_header = true;
    break;
  }
  if (!have_header) throw Error(ErrorKind::Format, "missing header row");

  ParseResult result;
  std::map<std::string, std::map<Date, std::pair<double, std::size_t>>> by_ticker;
  auto reject = [&](std::string message) {
    result.rejected.push_back({line_no, std::move(message)});
  };

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;

    const auto fields = split(view, format.delimiter);
    if (fields.size() != 3) {
      reject("expected 3 fields, got " + std::to_string(fields.size()));
      continue;
    }
    const auto date = Date::parse(fields[0]);
    if (!date) {
      reject("unparseable date '" + std::string(fields[0]) + "'");
      continue;
    }
    if (fields[1].empty()) {
      reject("empty ticker");
      continue;
    }
    double price = 0.0;
    const auto [ptr, ec] =
        std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), price);
    if (ec != std::errc{} || ptr != fields[2].data() + fields[2].size() || !std::isfinite(price)) {
      reject("unparseable price '" + std::string(fields[2]) + "'");
      continue;
    }
    if (price <= 0.0) {
      reject("non-positive price '" + std::string(fields[2]) + "'");
      continue;
    }

    auto& rows = by_ticker[std::string(fields[1])];
    const auto [it, inserted] = rows.emplace(*date, std::pair{price, line_no});
    if (!inserted) {
      throw Error(ErrorKind::DuplicateRecord,
                  "line " + std::to_string(line_no) + ": duplicate record for " +
                      std::string(fields[1]) + " on " + date->to_string() +
                      " (first seen on line " + std::to_string(it->second.second) + ")");
    }
  }

  result.series.reserve(by_ticker.size());
  for (auto& [ticker, rows] : by_ticker) {
    PriceSeries s{ticker, {}};
    s.observations.reserve(rows.size());
    for (const auto& [date, entry] : rows) s.observations.push_back({date, entry.first});
    result.series.push_back(std::move(s));
  }
  return result;
}

ParseResult parse_price_table(std::string_view text, const FormatSpec& format) {
  std::istringstream in{std::string(text)};
  return parse_price_table(in, format);
}

Period observed_period(std::span<const PriceSeries> series) {
  std::optional<Period> p;
  for (const auto& s : series) {
    for (const auto& obs : s.observations) {
      if (!p) {
        p = Period{obs.date, obs.date};
      } else {
        p->start = std::min(p->start, obs.date);
        p->end = std::max(p->end, obs.date);
      }
    }
  }
  if (!p) throw Error(ErrorKind::InsufficientData, "no observations");
  return *p;
}

AlignResult align_and_filter(std::span<const PriceSeries> series, const Period& period) {
  if (period.end < period.start) {
    throw Error(ErrorKind::Configuration,
                "period end " + period.end.to_string() + " precedes start " +
                    period.start.to_string());
  }
  auto in_period = [&](Date d) { return !(d < period.start) && !(period.end < d); };

  std::set<Date> axis;
  std::set<std::string> seen;
  for (const auto& s : series) {
    if (!seen.insert(s.ticker).second) {
      throw Error(ErrorKind::DuplicateRecord, "ticker " + s.ticker + " appears twice");
    }
    for (const auto& obs : s.observations) {
      if (in_period(obs.date)) axis.insert(obs.date);
    }
  }
  if (axis.empty()) {
    throw Error(ErrorKind::InsufficientData, "no trading days observed in period " +
                                                 period.start.to_string() + ".." +
                                                 period.end.to_string());
  }

  std::vector<const PriceSeries*> order;
  order.reserve(series.size());
  for (const auto& s : series) order.push_back(&s);
  std::sort(order.begin(), order.end(),
            [](const PriceSeries* a, const PriceSeries* b) { return a->ticker < b->ticker; });

  AlignResult result;
  std::vector<std::vector<double>> rows;
  for (const PriceSeries* s : order) {
    std::vector<double> row;
    row.reserve(axis.size());
    for (const auto& obs : s->observations) {
      if (in_period(obs.date)) row.push_back(obs.close);
    }
    // Dates are unique per series and all lie on the axis, so a full count
    // means complete coverage.
    if (row.size() == axis.size()) {
      result.panel.tickers.push_back(s->ticker);
      rows.push_back(std::move(row));
    } else {
      result.dropped.push_back(s->ticker);
    }
  }

  if (rows.size() < 2) {
    throw Error(ErrorKind::InsufficientData,
                std::to_string(rows.size()) + " companies cover the whole period; need at least 2");
  }
  if (axis.size() < 3) {
    throw Error(ErrorKind::InsufficientData,
                std::to_string(axis.size()) + " trading days in period; need at least 3");
  }

  result.panel.dates.assign(axis.begin(), axis.end());
  result.panel.prices = Matrix(rows.size(), axis.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(rows[i].begin(), rows[i].end(), result.panel.prices.row(i).begin());
  }
  return result;
}

std::vector<PriceSeries> to_series(const PricePanel& panel) {
  std::vector<PriceSeries> out;
  out.reserve(panel.tickers.size());
  for (std::size_t i = 0; i < panel.tickers.size(); ++i) {
    PriceSeries s{panel.tickers[i], {}};
    s.observations.reserve(panel.dates.size());
    for (std::size_t t = 0; t < panel.dates.size(); ++t) {
      s.observations.push_back({panel.dates[t], panel.prices(i, t)});
    }
    out.push_back(std::move(s));
  }
  return out;
}

ReturnPanel log_returns(const PricePanel& panel) {
  const std::size_t n = panel.tickers.size();
  const std::size_t t_count = panel.dates.size();
  if (t_count < 2) throw Error(ErrorKind::InsufficientData, "need at least 2 trading days");

  ReturnPanel out;
  out.tickers = panel.tickers;
  out.dates.assign(panel.dates.begin() + 1, panel.dates.end());
  out.returns = Matrix(n, t_count - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t + 1 < t_count; ++t) {
      out.returns(i, t) = std::log(panel.prices(i, t + 1)) - std::log(panel.prices(i, t));
    }
  }
  return out;
}

ReturnPanel slice_columns(const ReturnPanel& panel, std::size_t begin, std::size_t end) {
  if (begin > end || end > panel.columns()) {
    throw Error(ErrorKind::Configuration, "column range [" + std::to_string(begin) + ", " +
                                              std::to_string(end) + ") outside panel of " +
                                              std::to_string(panel.columns()) + " columns");
  }
  ReturnPanel out;
  out.tickers = panel.tickers;
  out.dates.assign(panel.dates.begin() + static_cast<std::ptrdiff_t>(begin),
                   panel.dates.begin() + static_cast<std::ptrdiff_t>(end));
  out.returns = Matrix(panel.companies(), end - begin);
  for (std::size_t i = 0; i < panel.companies(); ++i) {
    const auto src = panel.returns.row(i).subspan(begin, end - begin);
    std::copy(src.begin(), src.end(), out.returns.row(i).begin());
  }
  return out;
}

ReturnPanel select_rows(const ReturnPanel& panel, std::span<const std::size_t> keep) {
  ReturnPanel out;
  out.dates = panel.dates;
  out.returns = Matrix(keep.size(), panel.columns());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    out.tickers.push_back(panel.tickers.at(keep[r]));
    const auto src = panel.returns.row(keep[r]);
    std::copy(src.begin(), src.end(), out.returns.row(r).begin());
  }
  return out;
}

}  // namespace mstnet
