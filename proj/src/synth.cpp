#include "mstnet/synth.hpp"

#include <cmath>
#include <algorithm>
#include <random>

#include "mstnet/error.hpp"

namespace mstnet {

namespace {

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

void validate(const FactorModelParams& p) {
  if (p.n_companies < 2) throw Error(ErrorKind::Configuration, "n_companies must be >= 2");
  if (p.n_days < 3) throw Error(ErrorKind::Configuration, "n_days must be >= 3");
  if (p.betas.size() != p.n_companies) {
    throw Error(ErrorKind::Configuration, "expected " + std::to_string(p.n_companies) +
                                              " betas, got " + std::to_string(p.betas.size()));
  }
  if (!(p.noise_sigma > 0.0) || !std::isfinite(p.noise_sigma)) {
    throw Error(ErrorKind::Configuration, "noise_sigma must be positive");
  }
  for (double b : p.betas) {
    if (!std::isfinite(b)) throw Error(ErrorKind::Configuration, "betas must be finite");
  }
}

}  // namespace

std::vector<std::string> synthetic_tickers(std::size_t n, std::string_view prefix) {
  int digits = 1;
  for (std::size_t m = n > 0 ? n - 1 : 0; m >= 10; m /= 10) ++digits;
  digits = std::max(digits, 3);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string number = std::to_string(i);
    number.insert(0, static_cast<std::size_t>(digits) - std::min<std::size_t>(number.size(), digits), '0');
    out.push_back(std::string(prefix) + number);
  }
  return out;
}

ReturnPanel one_factor_returns(const FactorModelParams& params) {
  validate(params);
  const std::size_t n = params.n_companies;
  const std::size_t cols = params.n_days - 1;

  ReturnPanel out;
  out.tickers = synthetic_tickers(n);
  out.dates.reserve(cols);
  for (std::size_t t = 1; t <= cols; ++t) {
    out.dates.push_back(kSyntheticStart.add_business_days(static_cast<int>(t)));
  }
  out.returns = Matrix(n, cols);

  NormalStream rng(params.seed);
  for (std::size_t t = 0; t < cols; ++t) {
    const double factor = rng.normal();
    for (std::size_t i = 0; i < n; ++i) {
      out.returns(i, t) = params.betas[i] * factor + params.noise_sigma * rng.normal();
    }
  }
  return out;
}

ReturnPanel hub_regime_returns(const HubRegimeParams& params) {
  ReturnPanel out = one_factor_returns(params.base);
  if (params.hub_index >= params.base.n_companies) {
    throw Error(ErrorKind::Configuration, "hub_index out of range");
  }
  if (!(params.gamma >= 0.0 && params.gamma < 1.0)) {
    throw Error(ErrorKind::Configuration, "gamma must lie in [0, 1)");
  }
  if (params.regime_start >= params.regime_end || params.regime_end > out.columns()) {
    throw Error(ErrorKind::Configuration,
                "regime interval [" + std::to_string(params.regime_start) + ", " +
                    std::to_string(params.regime_end) + ") outside " +
                    std::to_string(out.columns()) + " return columns");
  }
  if (params.gamma == 0.0) return out;

  const double g = params.gamma;
  for (std::size_t i = 0; i < out.companies(); ++i) {
    if (i == params.hub_index) continue;
    for (std::size_t t = params.regime_start; t < params.regime_end; ++t) {
      out.returns(i, t) = g * out.returns(params.hub_index, t) + (1.0 - g) * out.returns(i, t);
    }
  }
  return out;
}

Tree preferential_attachment_tree(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::Configuration, "tree needs at least 2 vertices");
  NormalStream rng(seed);
  // Every vertex appears in `ends` once per incident edge, so a uniform pick
  // from it is a degree-proportional pick.
  std::vector<std::size_t> ends{0, 1};
  ends.reserve(2 * (n - 1));
  std::vector<Edge> edges{{0, 1, 1.0}};
  edges.reserve(n - 1);
  for (std::size_t v = 2; v < n; ++v) {
    const auto pick = static_cast<std::size_t>(rng.uniform() * static_cast<double>(ends.size()));
    const std::size_t target = ends[std::min(pick, ends.size() - 1)];
    edges.push_back({target, v, 1.0});
    ends.push_back(target);
    ends.push_back(v);
  }
  return make_tree(synthetic_tickers(n, "V"), std::move(edges));
}

PricePanel prices_from_returns(const ReturnPanel& returns, double base_price) {
  if (returns.columns() == 0) throw Error(ErrorKind::InsufficientData, "no return columns");
  PricePanel out;
  out.tickers = returns.tickers;
  out.dates.push_back(returns.dates.front().add_business_days(-1));
  out.dates.insert(out.dates.end(), returns.dates.begin(), returns.dates.end());
  out.prices = Matrix(returns.companies(), out.dates.size());
  for (std::size_t i = 0; i < returns.companies(); ++i) {
    double log_price = std::log(base_price);
    out.prices(i, 0) = base_price;
    for (std::size_t t = 0; t < returns.columns(); ++t) {
      log_price += returns.returns(i, t);
      out.prices(i, t + 1) = std::exp(log_price);
    }
  }
  return out;
}

}  // namespace mstnet
