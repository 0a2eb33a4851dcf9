#include "mstnet/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "mstnet/error.hpp"

namespace mstnet {

namespace {

void check_window(const ReturnPanel& returns) {
  if (returns.columns() < 3) {
    throw Error(ErrorKind::InsufficientData,
                "correlation window has " + std::to_string(returns.columns()) +
                    " columns; need at least 3");
  }
  if (returns.companies() < 2) {
    throw Error(ErrorKind::InsufficientData, "correlation needs at least 2 companies");
  }
}

bool constant_row(std::span<const double> row) {
  return std::all_of(row.begin(), row.end(), [&](double v) { return v == row.front(); });
}

[[noreturn]] void throw_degenerate(const std::string& ticker) {
  throw Error(ErrorKind::DegenerateSeries, "zero-variance returns for " + ticker);
}

double clamp_correlation(double r, std::size_t i, std::size_t j) {
  if (!(std::abs(r) <= 1.0 + kCorrelationOvershoot)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "correlation (" << i << ", " << j << ") = " << r << " outside [-1, 1]";
    throw Error(ErrorKind::Internal, msg.str());
  }
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace

std::vector<std::size_t> degenerate_rows(const ReturnPanel& returns) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < returns.companies(); ++i) {
    if (constant_row(returns.returns.row(i))) out.push_back(i);
  }
  return out;
}

CorrelationMatrix pearson_matrix(const ReturnPanel& returns) {
  check_window(returns);
  const std::size_t n = returns.companies();
  const std::size_t len = returns.columns();

  // z[i] = (x_i - mean_i) / ||x_i - mean_i||, so rho_ij = <z_i, z_j>.
  Matrix z(n, len);
  std::vector<std::uint8_t> degenerate(n, 0);
  const auto rows = static_cast<std::int64_t>(n);

#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const auto x = returns.returns.row(i);
    auto zi = z.row(i);
    if (constant_row(x)) {
      degenerate[i] = 1;
      continue;
    }
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(len);
    double ss = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
      zi[t] = x[t] - mean;
      ss += zi[t] * zi[t];
    }
    if (ss == 0.0) {
      degenerate[i] = 1;
      continue;
    }
    const double inv = 1.0 / std::sqrt(ss);
    for (double& v : zi) v *= inv;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (degenerate[i]) throw_degenerate(returns.tickers[i]);
  }

  CorrelationMatrix out{returns.tickers, Matrix(n, n)};

#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const auto zi = z.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto zj = z.row(j);
      double dot = 0.0;
      for (std::size_t t = 0; t < len; ++t) dot += zi[t] * zj[t];
      out.rho(i, j) = dot;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    out.rho(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      out.rho(i, j) = clamp_correlation(out.rho(i, j), i, j);
      out.rho(j, i) = out.rho(i, j);
    }
  }
  return out;
}

CorrelationMatrix pearson_matrix_reference(const ReturnPanel& returns) {
  check_window(returns);
  const std::size_t n = returns.companies();
  const std::size_t len = returns.columns();
  const double dof = static_cast<double>(len - 1);

  std::vector<double> mean(n, 0.0), var(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = returns.returns.row(i);
    if (constant_row(x)) throw_degenerate(returns.tickers[i]);
    for (double v : x) mean[i] += v;
    mean[i] /= static_cast<double>(len);
    for (double v : x) var[i] += (v - mean[i]) * (v - mean[i]);
    var[i] /= dof;
    if (var[i] == 0.0) throw_degenerate(returns.tickers[i]);
  }

  CorrelationMatrix out{returns.tickers, Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.rho(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double cov = 0.0;
      for (std::size_t t = 0; t < len; ++t) {
        cov += (returns.returns(i, t) - mean[i]) * (returns.returns(j, t) - mean[j]);
      }
      cov /= dof;
      const double r = clamp_correlation(cov / std::sqrt(var[i] * var[j]), i, j);
      out.rho(i, j) = r;
      out.rho(j, i) = r;
    }
  }
  return out;
}

double correlation_distance(double rho) { return std::sqrt(2.0 * (1.0 - rho)); }

DistanceMatrix to_distance(const CorrelationMatrix& corr) {
  const std::size_t n = corr.tickers.size();
  DistanceMatrix out{corr.tickers, Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.d(i, j) = i == j ? 0.0 : correlation_distance(corr.rho(i, j));
    }
  }
  return out;
}

}  // namespace mstnet
