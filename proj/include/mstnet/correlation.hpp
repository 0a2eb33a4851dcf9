#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mstnet/ingestion.hpp"
#include "mstnet/matrix.hpp"

namespace mstnet {

/// Numerical overshoot of |rho| beyond 1 that is silently clamped; anything
/// larger is an internal error.
inline constexpr double kCorrelationOvershoot = 1e-12;

struct CorrelationMatrix {
  std::vector<std::string> tickers;
  Matrix rho;  // symmetric, unit diagonal, entries in [-1, 1]
};

struct DistanceMatrix {
  std::vector<std::string> tickers;
  Matrix d;  // symmetric, zero diagonal, entries in [0, 2]

  std::size_t size() const noexcept { return tickers.size(); }
};

/// Pearson cross-correlation of the return rows.
///
/// Rows are centred and normalised once, then every off-diagonal entry is a
/// single dot product evaluated by one thread, so the result does not depend
/// on the OpenMP thread count.
///
/// Throws Error(DegenerateSeries) naming the first zero-variance row and
/// Error(InsufficientData) for fewer than 3 columns.
CorrelationMatrix pearson_matrix(const ReturnPanel& returns);

/// Serial two-pass textbook evaluation (sample moments per pair). Kept as the
/// reference for `pearson_matrix`; agrees with it to rounding.
CorrelationMatrix pearson_matrix_reference(const ReturnPanel& returns);

/// d = sqrt(2 (1 - rho)).
double correlation_distance(double rho);

DistanceMatrix to_distance(const CorrelationMatrix& corr);

/// Indices of rows whose values are all identical.
std::vector<std::size_t> degenerate_rows(const ReturnPanel& returns);

}  // namespace mstnet
