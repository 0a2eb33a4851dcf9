#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mstnet/ingestion.hpp"
#include "mstnet/metrics.hpp"
#include "mstnet/mst.hpp"

namespace mstnet {

inline constexpr std::size_t kMinWindowWidth = 30;

struct WindowSpec {
  std::size_t width = 250;  // trading days
  std::size_t step = 5;
};

/// Half-open column range [begin, end).
struct Window {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Window&, const Window&) = default;
};

/// Left-aligned windows of exactly `width` columns, stepping by `step`.
/// Error(Configuration) if width < 30, step < 1 or width > columns.
std::vector<Window> windows(std::size_t columns, const WindowSpec& spec);
std::vector<Window> windows(const ReturnPanel& panel, const WindowSpec& spec);

/// Result of running correlation -> distance -> Prim -> metrics on one window.
struct WindowAnalysis {
  Window window;
  std::vector<std::string> dropped;  // zero-variance companies left out
  Tree tree;
  TreeAssessment assessment;
  double ntl = 0.0;
  double mol_static = 0.0;  // NaN when the static center was dropped
  double mol_dynamic = 0.0;
  std::string dynamic_center;
};

/// `static_center` may be empty, in which case mol_static is NaN.
WindowAnalysis analyze_window(const ReturnPanel& panel, Window window,
                              std::string_view static_center, const Thresholds& thresholds);

struct MetricSeries {
  std::vector<Window> windows;
  std::vector<Date> window_end_dates;
  std::vector<double> ntl;
  std::vector<double> mol_static;
  std::vector<double> mol_dynamic;
  std::vector<int> k_max;
  std::vector<std::optional<Phase>> phase;  // empty: fit underdetermined
  std::vector<std::string> dynamic_center;
  std::vector<std::vector<std::string>> dropped;

  std::size_t size() const noexcept { return ntl.size(); }
};

struct EvolveOptions {
  Thresholds thresholds;
  int threads = 0;  // 0: OpenMP default
};

/// Windows are evaluated in parallel and assembled by index; the output is
/// identical to `evolve_serial` for any thread count.
/// Error(MissingVertex) if `static_center` is not a panel company.
MetricSeries evolve(const ReturnPanel& panel, const WindowSpec& spec,
                    std::string_view static_center, const EvolveOptions& options = {});

MetricSeries evolve_serial(const ReturnPanel& panel, const WindowSpec& spec,
                           std::string_view static_center, const EvolveOptions& options = {});

struct PhaseChange {
  std::size_t index = 0;
  std::optional<Phase> from;
  std::optional<Phase> to;

  friend bool operator==(const PhaseChange&, const PhaseChange&) = default;
};

struct SuperhubInterval {
  std::size_t start = 0;  // inclusive window indices
  std::size_t end = 0;
  std::string hub_ticker;

  friend bool operator==(const SuperhubInterval&, const SuperhubInterval&) = default;
};

struct TransitionReport {
  std::size_t ntl_argmin = 0;
  Date ntl_argmin_date;
  std::size_t mol_argmin = 0;  // over mol_dynamic
  Date mol_argmin_date;
  std::vector<PhaseChange> phase_changes;
  std::vector<SuperhubInterval> superhub_intervals;

  friend bool operator==(const TransitionReport&, const TransitionReport&) = default;
};

/// Global minima (first index on ties, NaN ignored), phase-label changes and
/// maximal runs of SuperhubDecorated windows sharing one hub.
/// Error(InsufficientData) for an empty series.
TransitionReport detect_transitions(const MetricSeries& series);

}  // namespace mstnet
