#include "mstnet/date.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace mstnet {

namespace {

std::chrono::sys_days to_sys(int days) {
  return std::chrono::sys_days{std::chrono::days{days}};
}

template <typename T>
bool parse_digits(std::string_view s, T& value) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day) {
  const std::chrono::year_month_day ymd{std::chrono::year{year},
                                        std::chrono::month{month},
                                        std::chrono::day{day}};
  days_ = static_cast<int>(std::chrono::sys_days{ymd}.time_since_epoch().count());
}

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
      !parse_digits(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return Date{static_cast<int>(std::chrono::sys_days{ymd}.time_since_epoch().count())};
}

std::string Date::to_string() const {
  const std::chrono::year_month_day ymd{to_sys(days_)};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

bool Date::is_weekend() const {
  const std::chrono::weekday wd{to_sys(days_)};
  return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

Date Date::add_business_days(int n) const {
  Date d = *this;
  const int dir = n < 0 ? -1 : 1;
  for (int moved = 0; moved != n; moved += dir) {
    do {
      d.days_ += dir;
    } while (d.is_weekend());
  }
  return d;
}

}  // namespace mstnet
