#include "mstnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "mstnet/error.hpp"

namespace mstnet {

namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;

  double at(double x) const { return intercept + slope * x; }
};

// Requires at least two distinct x values.
Line least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  Line line;
  line.slope = sxy / sxx;
  line.intercept = my - line.slope * mx;
  if (x.size() > 2) {
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - line.at(x[i]);
      sse += r * r;
    }
    line.slope_stderr = std::sqrt(sse / (n - 2.0) / sxx);
  }
  return line;
}

Line fit_without(std::span<const double> x, std::span<const double> y, std::size_t skip) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i == skip) continue;
    xs.push_back(x[i]);
    ys.push_back(y[i]);
  }
  return least_squares(xs, ys);
}

struct DegreeExtremes {
  int k_max = 0;
  int k_second = 0;
  std::size_t at_max = 0;
};

DegreeExtremes extremes(const DegreeDistribution& dist) {
  DegreeExtremes e;
  if (dist.counts.empty()) return e;
  const auto top = dist.counts.rbegin();
  e.k_max = top->first;
  e.at_max = top->second;
  if (e.at_max >= 2) {
    e.k_second = e.k_max;
  } else if (dist.counts.size() >= 2) {
    e.k_second = std::next(top)->first;
  }
  return e;
}

}  // namespace

DegreeDistribution degree_distribution(const Tree& tree) {
  DegreeDistribution dist;
  dist.n_vertices = tree.size();
  for (int k : vertex_degrees(tree)) ++dist.counts[k];
  for (const auto& [k, c] : dist.counts) {
    dist.f[k] = static_cast<double>(c) / static_cast<double>(dist.n_vertices);
  }
  return dist;
}

double PowerLawFit::predict_log(int k) const {
  return intercept + slope * std::log10(static_cast<double>(k));
}

PowerLawFit fit_power_law(const DegreeDistribution& dist, const FitOptions& options) {
  std::vector<DegreePoint> points;
  points.reserve(dist.f.size());
  for (const auto& [k, f] : dist.f) {
    if (f > 0.0) points.push_back({k, f, dist.counts.at(k)});
  }
  return fit_power_law(points, options);
}

PowerLawFit fit_power_law(std::span<const DegreePoint> input, const FitOptions& options) {
  std::vector<DegreePoint> points(input.begin(), input.end());
  std::sort(points.begin(), points.end(),
            [](const DegreePoint& a, const DegreePoint& b) { return a.k < b.k; });
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].k < 1 || !(points[i].f > 0.0)) {
      throw Error(ErrorKind::Configuration, "degree points need k >= 1 and f > 0");
    }
    if (i > 0 && points[i].k == points[i - 1].k) {
      throw Error(ErrorKind::Configuration, "degree " + std::to_string(points[i].k) + " repeated");
    }
  }
  if (points.size() < 3) {
    throw Error(ErrorKind::UnderdeterminedFit,
                "power-law fit needs at least 3 distinct degrees, got " +
                    std::to_string(points.size()));
  }

  const std::size_t n = points.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::log10(static_cast<double>(points[i].k));
    y[i] = std::log10(points[i].f);
  }

  std::vector<bool> candidate(n);
  std::size_t n_candidates = 0;
  for (std::size_t i = 0; i < n; ++i) {
    candidate[i] = points[i].count != 1;
    if (candidate[i]) ++n_candidates;
  }
  for (std::size_t i = 0; i < n && n_candidates < 3; ++i) {
    if (!candidate[i]) {
      candidate[i] = true;
      ++n_candidates;
    }
  }

  // Screening: each candidate against the line through the other candidates,
  // so a high-leverage hub cannot hide by pulling the line towards itself.
  std::vector<double> cx, cy;
  std::vector<std::size_t> cidx;
  for (std::size_t i = 0; i < n; ++i) {
    if (!candidate[i]) continue;
    cx.push_back(x[i]);
    cy.push_back(y[i]);
    cidx.push_back(i);
  }
  std::vector<std::pair<double, std::size_t>> flagged;
  for (std::size_t j = 0; j < cidx.size(); ++j) {
    const double r = cy[j] - fit_without(cx, cy, j).at(cx[j]);
    if (r > options.outlier_threshold) flagged.emplace_back(r, cidx[j]);
  }
  std::sort(flagged.begin(), flagged.end(), std::greater<>());

  std::vector<bool> keep = candidate;
  std::size_t kept = n_candidates;
  for (const auto& [r, i] : flagged) {
    if (kept == 3) break;
    keep[i] = false;
    --kept;
  }

  std::vector<double> kx, ky;
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) {
      kx.push_back(x[i]);
      ky.push_back(y[i]);
    }
  }
  const Line line = least_squares(kx, ky);

  PowerLawFit fit;
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.slope_stderr = line.slope_stderr;
  fit.k_min = std::numeric_limits<int>::max();
  fit.k_max = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - line.at(x[i]);
    if (keep[i]) {
      fit.residuals[points[i].k] = r;
      fit.k_min = std::min(fit.k_min, points[i].k);
      fit.k_max = std::max(fit.k_max, points[i].k);
    } else {
      fit.excluded[points[i].k] = r;
    }
  }
  return fit;
}

double normalized_tree_length(const Tree& tree) {
  if (tree.edges.empty()) throw Error(ErrorKind::InsufficientData, "tree has no edges");
  double sum = 0.0;
  for (const auto& e : tree.edges) sum += e.weight;
  return sum / static_cast<double>(tree.edges.size());
}

double mean_occupation_layer(const Tree& tree, std::string_view central) {
  const auto it = std::find(tree.tickers.begin(), tree.tickers.end(), central);
  if (it == tree.tickers.end()) {
    throw Error(ErrorKind::MissingVertex, "central vertex '" + std::string(central) +
                                              "' is not in the tree");
  }
  const auto root = static_cast<std::size_t>(it - tree.tickers.begin());
  const auto adj = adjacency(tree);

  std::vector<std::size_t> level(tree.size(), std::numeric_limits<std::size_t>::max());
  std::queue<std::size_t> frontier;
  level[root] = 0;
  frontier.push(root);
  std::size_t sum = 0;
  while (!frontier.empty()) {
    const auto v = frontier.front();
    frontier.pop();
    sum += level[v];
    for (auto w : adj[v]) {
      if (level[w] == std::numeric_limits<std::size_t>::max()) {
        level[w] = level[v] + 1;
        frontier.push(w);
      }
    }
  }
  return static_cast<double>(sum) / static_cast<double>(tree.size());
}

std::string max_degree_vertex(const Tree& tree) {
  const auto deg = vertex_degrees(tree);
  std::size_t best = 0;
  for (std::size_t v = 1; v < deg.size(); ++v) {
    if (deg[v] > deg[best] || (deg[v] == deg[best] && tree.tickers[v] < tree.tickers[best])) {
      best = v;
    }
  }
  return tree.tickers.at(best);
}

SuperhubReport detect_superhub(const Tree& tree, const DegreeDistribution& dist,
                               const PowerLawFit& fit, const Thresholds& thresholds) {
  const auto ext = extremes(dist);
  SuperhubReport report;
  report.hub_ticker = max_degree_vertex(tree);
  report.k_max = ext.k_max;
  report.k_second = ext.k_second;
  report.degree_gap_ratio = static_cast<double>(ext.k_max) / static_cast<double>(ext.k_second);

  if (const auto ex = fit.excluded.find(ext.k_max); ex != fit.excluded.end()) {
    // Already outside the final fit set, so the final line is the body line.
    report.log_residual = ex->second;
  } else if (fit.residuals.contains(ext.k_max) && fit.residuals.size() >= 3) {
    std::vector<double> x, y;
    double hub_x = 0.0, hub_y = 0.0;
    for (const auto& [k, r] : fit.residuals) {
      const double lx = std::log10(static_cast<double>(k));
      const double ly = fit.predict_log(k) + r;
      if (k == ext.k_max) {
        hub_x = lx;
        hub_y = ly;
      } else {
        x.push_back(lx);
        y.push_back(ly);
      }
    }
    report.log_residual = hub_y - least_squares(x, y).at(hub_x);
  } else {
    report.log_residual = std::log10(dist.f.at(ext.k_max)) - fit.predict_log(ext.k_max);
  }

  report.is_superhub = ext.k_max >= kMinHubDegree && report.log_residual >= thresholds.tau &&
                       report.degree_gap_ratio >= thresholds.gap;
  return report;
}

SuperhubReport detect_superhub(const Tree& tree, const DegreeDistribution& dist,
                               const Thresholds& thresholds) {
  const auto ext = extremes(dist);
  SuperhubReport report;
  report.hub_ticker = max_degree_vertex(tree);
  report.k_max = ext.k_max;
  report.k_second = ext.k_second;
  report.degree_gap_ratio = static_cast<double>(ext.k_max) / static_cast<double>(ext.k_second);

  const bool star = ext.at_max == 1 && ext.k_max >= kMinHubDegree &&
                    static_cast<std::size_t>(ext.k_max) + 1 == dist.n_vertices;
  report.log_residual = star ? std::numeric_limits<double>::infinity()
                             : std::numeric_limits<double>::quiet_NaN();
  report.is_superhub = star && report.degree_gap_ratio >= thresholds.gap;
  return report;
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::PowerLaw: return "PowerLaw";
    case Phase::SuperhubDecorated: return "SuperhubDecorated";
    case Phase::MultiHubDecorated: return "MultiHubDecorated";
  }
  return "PowerLaw";
}

std::optional<Phase> parse_phase(std::string_view text) {
  for (Phase p : {Phase::PowerLaw, Phase::SuperhubDecorated, Phase::MultiHubDecorated}) {
    if (text == to_string(p)) return p;
  }
  return std::nullopt;
}

PhaseLabel classify_phase(const DegreeDistribution& /*dist*/, const PowerLawFit& fit,
                          const SuperhubReport& report, const Thresholds& thresholds) {
  PhaseLabel label;
  auto count = [&](const std::map<int, double>& residuals) {
    for (const auto& [k, r] : residuals) {
      if (k >= kMinHubDegree && r >= thresholds.tau_hub) ++label.n_outlier_hubs;
    }
  };
  count(fit.residuals);
  count(fit.excluded);

  if (report.is_superhub) {
    label.phase = Phase::SuperhubDecorated;
  } else if (label.n_outlier_hubs >= 2) {
    label.phase = Phase::MultiHubDecorated;
  } else {
    label.phase = Phase::PowerLaw;
  }
  return label;
}

TreeAssessment assess_tree(const Tree& tree, const Thresholds& thresholds) {
  TreeAssessment out;
  out.degrees = degree_distribution(tree);
  if (out.degrees.counts.size() >= 3) {
    out.fit = fit_power_law(out.degrees, FitOptions{thresholds.tau});
    out.superhub = detect_superhub(tree, out.degrees, *out.fit, thresholds);
    out.phase = classify_phase(out.degrees, *out.fit, out.superhub, thresholds);
  } else {
    out.superhub = detect_superhub(tree, out.degrees, thresholds);
    if (out.superhub.is_superhub) out.phase = PhaseLabel{Phase::SuperhubDecorated, 1};
  }
  return out;
}

}  // namespace mstnet
