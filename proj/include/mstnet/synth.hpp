#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mstnet/ingestion.hpp"
#include "mstnet/mst.hpp"

namespace mstnet {

/// Generator family used by every synthetic fixture: std::mt19937_64 for
/// bits, 53-bit uniforms, Marsaglia polar method for normals.
inline constexpr std::string_view kGeneratorId = "mt19937_64/marsaglia-polar";

/// First synthetic trading day.
inline const Date kSyntheticStart{2005, 1, 3};

/// r_i(t) = beta_i f(t) + sigma eps_i(t) over `n_days` price days, i.e.
/// n_days - 1 return columns.
struct FactorModelParams {
  std::size_t n_companies = 0;
  std::size_t n_days = 0;
  std::vector<double> betas;  // one per company
  double noise_sigma = 1.0;
  std::uint64_t seed = 0;
};

/// Inside return columns [regime_start, regime_end) every company except the
/// hub becomes gamma r_hub + (1 - gamma) r_base.
struct HubRegimeParams {
  FactorModelParams base;
  std::size_t hub_index = 0;
  double gamma = 0.0;  // [0, 1)
  std::size_t regime_start = 0;
  std::size_t regime_end = 0;
};

ReturnPanel one_factor_returns(const FactorModelParams& params);
ReturnPanel hub_regime_returns(const HubRegimeParams& params);

/// Each new vertex attaches to an existing one chosen with probability
/// proportional to its degree. Unit edge weights.
Tree preferential_attachment_tree(std::size_t n, std::uint64_t seed);

/// Zero-padded labels so lexicographic order equals index order.
std::vector<std::string> synthetic_tickers(std::size_t n, std::string_view prefix = "S");

/// Prices starting at `base_price` on the business day before the first
/// return date, compounded with exp(r).
PricePanel prices_from_returns(const ReturnPanel& returns, double base_price = 100.0);

}  // namespace mstnet
