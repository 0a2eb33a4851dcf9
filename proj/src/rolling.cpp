#include "mstnet/rolling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>

#include <omp.h>

#include "mstnet/correlation.hpp"
#include "mstnet/error.hpp"

namespace mstnet {

std::vector<Window> windows(std::size_t columns, const WindowSpec& spec) {
  if (spec.width < kMinWindowWidth) {
    throw Error(ErrorKind::Configuration, "window width " + std::to_string(spec.width) +
                                              " below minimum " +
                                              std::to_string(kMinWindowWidth));
  }
  if (spec.step < 1) throw Error(ErrorKind::Configuration, "window step must be positive");
  if (spec.width > columns) {
    throw Error(ErrorKind::Configuration, "window width " + std::to_string(spec.width) +
                                              " exceeds " + std::to_string(columns) +
                                              " return columns");
  }
  std::vector<Window> out;
  for (std::size_t begin = 0; begin + spec.width <= columns; begin += spec.step) {
    out.push_back({begin, begin + spec.width});
  }
  return out;
}

std::vector<Window> windows(const ReturnPanel& panel, const WindowSpec& spec) {
  return windows(panel.columns(), spec);
}

WindowAnalysis analyze_window(const ReturnPanel& panel, Window window,
                              std::string_view static_center, const Thresholds& thresholds) {
  WindowAnalysis out;
  out.window = window;

  const ReturnPanel slice = slice_columns(panel, window.begin, window.end);
  const auto bad = degenerate_rows(slice);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0, b = 0; i < slice.companies(); ++i) {
    if (b < bad.size() && bad[b] == i) {
      out.dropped.push_back(slice.tickers[i]);
      ++b;
    } else {
      keep.push_back(i);
    }
  }
  if (keep.size() < 2) {
    throw Error(ErrorKind::InsufficientData,
                "window ending " + slice.dates.back().to_string() + " has " +
                    std::to_string(keep.size()) + " non-degenerate companies");
  }
  const ReturnPanel usable = bad.empty() ? slice : select_rows(slice, keep);

  out.tree = prim_mst(to_distance(pearson_matrix(usable)));
  out.assessment = assess_tree(out.tree, thresholds);
  out.ntl = normalized_tree_length(out.tree);
  out.dynamic_center = max_degree_vertex(out.tree);
  out.mol_dynamic = mean_occupation_layer(out.tree, out.dynamic_center);

  const bool have_static =
      !static_center.empty() &&
      std::find(usable.tickers.begin(), usable.tickers.end(), static_center) != usable.tickers.end();
  out.mol_static = have_static ? mean_occupation_layer(out.tree, static_center)
                               : std::numeric_limits<double>::quiet_NaN();
  return out;
}

namespace {

void check_center(const ReturnPanel& panel, std::string_view static_center) {
  if (std::find(panel.tickers.begin(), panel.tickers.end(), static_center) == panel.tickers.end()) {
    throw Error(ErrorKind::MissingVertex,
                "static center '" + std::string(static_center) + "' is not in the panel");
  }
}

MetricSeries assemble(const ReturnPanel& panel, std::vector<WindowAnalysis>& rows) {
  MetricSeries s;
  for (auto& row : rows) {
    s.windows.push_back(row.window);
    s.window_end_dates.push_back(panel.dates[row.window.end - 1]);
    s.ntl.push_back(row.ntl);
    s.mol_static.push_back(row.mol_static);
    s.mol_dynamic.push_back(row.mol_dynamic);
    s.k_max.push_back(row.assessment.superhub.k_max);
    s.phase.push_back(row.assessment.phase ? std::optional{row.assessment.phase->phase}
                                           : std::nullopt);
    s.dynamic_center.push_back(std::move(row.dynamic_center));
    s.dropped.push_back(std::move(row.dropped));
  }
  return s;
}

}  // namespace

MetricSeries evolve(const ReturnPanel& panel, const WindowSpec& spec,
                    std::string_view static_center, const EvolveOptions& options) {
  check_center(panel, static_center);
  const auto ws = windows(panel, spec);
  std::vector<WindowAnalysis> rows(ws.size());
  std::vector<std::exception_ptr> errors(ws.size());
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(ws.size());

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t w = 0; w < count; ++w) {
    const auto i = static_cast<std::size_t>(w);
    try {
      rows[i] = analyze_window(panel, ws[i], static_center, options.thresholds);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return assemble(panel, rows);
}

MetricSeries evolve_serial(const ReturnPanel& panel, const WindowSpec& spec,
                           std::string_view static_center, const EvolveOptions& options) {
  check_center(panel, static_center);
  const auto ws = windows(panel, spec);
  std::vector<WindowAnalysis> rows;
  rows.reserve(ws.size());
  for (const auto& w : ws) rows.push_back(analyze_window(panel, w, static_center, options.thresholds));
  return assemble(panel, rows);
}

namespace {

std::size_t first_argmin(const std::vector<double>& v) {
  std::size_t best = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::isnan(v[i])) continue;
    if (best == v.size() || v[i] < v[best]) best = i;
  }
  return best == v.size() ? 0 : best;
}

}  // namespace

TransitionReport detect_transitions(const MetricSeries& series) {
  if (series.size() == 0) throw Error(ErrorKind::InsufficientData, "empty metric series");

  TransitionReport r;
  r.ntl_argmin = first_argmin(series.ntl);
  r.ntl_argmin_date = series.window_end_dates[r.ntl_argmin];
  r.mol_argmin = first_argmin(series.mol_dynamic);
  r.mol_argmin_date = series.window_end_dates[r.mol_argmin];

  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series.phase[i] != series.phase[i - 1]) {
      r.phase_changes.push_back({i, series.phase[i - 1], series.phase[i]});
    }
  }

  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.phase[i] != Phase::SuperhubDecorated) continue;
    auto& runs = r.superhub_intervals;
    if (!runs.empty() && runs.back().end + 1 == i && runs.back().hub_ticker == series.dynamic_center[i]) {
      runs.back().end = i;
    } else {
      runs.push_back({i, i, series.dynamic_center[i]});
    }
  }
  return r;
}

}  // namespace mstnet
