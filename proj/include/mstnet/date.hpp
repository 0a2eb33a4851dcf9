#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace mstnet {

/// Calendar date (proleptic Gregorian), stored as days since 1970-01-01.
class Date {
 public:
  Date() = default;
  Date(int year, unsigned month, unsigned day);

  /// Strict ISO-8601 `YYYY-MM-DD`; returns nullopt for anything else,
  /// including impossible dates such as 2005-02-30.
  static std::optional<Date> parse(std::string_view text);

  std::string to_string() const;
  int days_since_epoch() const noexcept { return days_; }

  bool is_weekend() const;
  /// Moves by `n` Monday-Friday days (negative `n` moves backwards).
  Date add_business_days(int n) const;

  friend auto operator<=>(const Date&, const Date&) = default;

 private:
  explicit Date(int days) : days_(days) {}
  int days_ = 0;
};

}  // namespace mstnet
