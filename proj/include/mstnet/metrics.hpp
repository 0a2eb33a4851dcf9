#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "mstnet/mst.hpp"

namespace mstnet {

/// Vertex-degree histogram normalised by the vertex count.
struct DegreeDistribution {
  std::size_t n_vertices = 0;
  std::map<int, std::size_t> counts;
  std::map<int, double> f;
};

DegreeDistribution degree_distribution(const Tree& tree);

struct DegreePoint {
  int k = 0;
  double f = 0.0;
  std::size_t count = 0;  // vertices of degree k; 0 when unknown
};

/// Ordinary least squares of log10 f(k) on log10 k.
struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int k_min = 0;  // range of the fitted degrees
  int k_max = 0;
  std::map<int, double> residuals;  // fitted degrees, against the final line
  std::map<int, double> excluded;   // screened-out or unresolved degrees, against the final line

  /// Fitted log10 f at degree k.
  double predict_log(int k) const;
};

struct FitOptions {
  /// Points lying this many decades above the line fitted through all other
  /// points are excluded before the final fit.
  double outlier_threshold = 0.8;
};

/// Degrees held by a single vertex sit at the 1/N resolution floor and are
/// scored against the body line rather than fitted, unless they are needed
/// (smallest k first) to reach 3 fit points. The candidates are then screened
/// against the line through the remaining candidates; those above
/// `outlier_threshold` are dropped (largest first, never going below 3
/// points) and the rest refitted. Error(UnderdeterminedFit) for fewer than 3
/// distinct degrees.
PowerLawFit fit_power_law(const DegreeDistribution& dist, const FitOptions& options = {});
PowerLawFit fit_power_law(std::span<const DegreePoint> points, const FitOptions& options = {});

/// Mean edge weight.
double normalized_tree_length(const Tree& tree);

/// Mean hop distance to `central` over all N vertices, the central vertex
/// counting as level 0. Error(MissingVertex) if `central` is not in the tree.
double mean_occupation_layer(const Tree& tree, std::string_view central);

/// Highest-degree vertex; ties go to the lexicographically smallest ticker.
std::string max_degree_vertex(const Tree& tree);

struct Thresholds {
  double tau = 0.8;      // decades above the body line for a superhub
  double gap = 1.6;      // k_max / k_second for a superhub
  double tau_hub = 0.4;  // decades above the line for an ordinary outlying hub
};

/// Degree needed before a vertex counts as a hub at all.
inline constexpr int kMinHubDegree = 3;

struct SuperhubReport {
  bool is_superhub = false;
  std::string hub_ticker;
  int k_max = 0;
  int k_second = 0;
  double log_residual = 0.0;  // k_max point against the line fitted without it
  double degree_gap_ratio = 0.0;
};

SuperhubReport detect_superhub(const Tree& tree, const DegreeDistribution& dist,
                               const PowerLawFit& fit, const Thresholds& thresholds = {});

/// Variant for trees whose degree distribution cannot be fitted. Only a star
/// qualifies, with an unbounded residual since there is no body to fit.
SuperhubReport detect_superhub(const Tree& tree, const DegreeDistribution& dist,
                               const Thresholds& thresholds = {});

enum class Phase { PowerLaw, SuperhubDecorated, MultiHubDecorated };

std::string_view to_string(Phase phase);
std::optional<Phase> parse_phase(std::string_view text);

struct PhaseLabel {
  Phase phase = Phase::PowerLaw;
  int n_outlier_hubs = 0;
};

PhaseLabel classify_phase(const DegreeDistribution& dist, const PowerLawFit& fit,
                          const SuperhubReport& report, const Thresholds& thresholds = {});

/// Everything the pipeline reports about one tree. `fit` is empty when the
/// tree has fewer than 3 distinct degrees; `phase` is then only set for a
/// star.
struct TreeAssessment {
  DegreeDistribution degrees;
  std::optional<PowerLawFit> fit;
  SuperhubReport superhub;
  std::optional<PhaseLabel> phase;
};

TreeAssessment assess_tree(const Tree& tree, const Thresholds& thresholds = {});

}  // namespace mstnet
