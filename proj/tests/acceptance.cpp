// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "mstnet/cli.hpp"
#include "mstnet/correlation.hpp"
#include "mstnet/metrics.hpp"
#include "mstnet/mst.hpp"
#include "mstnet/rolling.hpp"
#include "mstnet/synth.hpp"

using namespace mstnet;
using namespace mstnet::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

template <class F>
void criterion(const char* name, F&& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome mst_oracle() {
  std::mt19937_64 rng(20240601);
  int distinct_ok = 0, ties_ok = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 7);
    const auto d = random_distances(n, rng);
    const auto p = prim_mst(d), k = kruskal_mst(d), b = brute_force_mst(d);
    if (p.edges == k.edges && p.edges == b.edges && is_spanning_tree(p)) ++distinct_ok;

    const auto t = random_distances(n, rng, 3);
    const double w = total_weight(prim_mst(t));
    if (w == total_weight(kruskal_mst(t)) && w == total_weight(brute_force_mst(t))) ++ties_ok;
  }
  return {distinct_ok == trials && ties_ok == trials,
          fmt("identical edge sets %d/%d, equal tied totals %d/%d, N in [2,8]", distinct_ok,
              trials, ties_ok, trials)};
}

Outcome distance_recipe() {
  const double e1 = std::abs(correlation_distance(1.0));
  const double e0 = std::abs(correlation_distance(0.0) - std::sqrt(2.0));
  const double em = std::abs(correlation_distance(-1.0) - 2.0);
  bool monotone = true;
  double prev = correlation_distance(-1.0);
  for (int i = 1; i < 1000; ++i) {
    const double d = correlation_distance(-1.0 + 2.0 * i / 999.0);
    monotone = monotone && d < prev;
    prev = d;
  }
  const double worst = std::max({e1, e0, em});
  return {worst <= 1e-12 && monotone,
          fmt("max endpoint error %.1e (tol 1e-12), strictly decreasing on 1000-point grid: %s",
              worst, monotone ? "yes" : "no")};
}

Outcome metric_fixtures() {
  double worst = 0.0;
  int handshake_bad = 0, trees = 0;
  auto handshake = [&](const Tree& t) {
    int sum = 0;
    for (int k : vertex_degrees(t)) sum += k;
    ++trees;
    if (sum != static_cast<int>(2 * (t.size() - 1))) ++handshake_bad;
  };
  for (std::size_t n = 2; n <= 200; ++n) {
    const auto s = star(n), c = chain(n);
    worst = std::max(worst, std::abs(mean_occupation_layer(s, s.tickers[0]) - double(n - 1) / double(n)));
    worst = std::max(worst, std::abs(mean_occupation_layer(c, c.tickers[0]) - double(n - 1) / 2.0));
    worst = std::max({worst, std::abs(normalized_tree_length(s) - 1.0),
                      std::abs(normalized_tree_length(c) - 1.0)});
    handshake(s);
    handshake(c);
    handshake(preferential_attachment_tree(n, n));
  }
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) handshake(prim_mst(random_distances(2 + i % 40, rng)));
  return {worst <= 1e-12 && handshake_bad == 0,
          fmt("max error %.1e (tol 1e-12), handshake violations %d/%d", worst, handshake_bad, trees)};
}

Outcome power_law_exactness() {
  double worst = 0.0;
  std::string detail;
  for (double exponent : {-2.0, -2.62, -3.0}) {
    std::vector<DegreePoint> pts;
    for (int k = 1; k <= 20; ++k) pts.push_back({k, 0.5 * std::pow(k, exponent)});
    const double err = std::abs(fit_power_law(pts).slope - exponent);
    worst = std::max(worst, err);
    detail += fmt("%g->%.2e ", exponent, err);
  }
  return {worst <= 1e-6, detail + "(tol 1e-6)"};
}

Outcome ba_exponent() {
  double sum = 0.0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    sum += fit_power_law(degree_distribution(preferential_attachment_tree(10000, s))).slope;
  }
  const double mean = sum / seeds;
  return {mean >= -3.3 && mean <= -2.7,
          fmt("mean slope %.4f over %d seeds, n=10000 (band [-3.3, -2.7])", mean, seeds)};
}

Outcome superhub_split() {
  const auto one = assess_tree(tree_with_degrees(degree_sequence(kSuperhubCounts)));
  const auto many = assess_tree(tree_with_degrees(degree_sequence(kMultiHubCounts)));
  const bool ok1 = one.superhub.is_superhub && one.superhub.k_max == 53 &&
                   one.degrees.n_vertices == 142 && one.degrees.counts.at(53) == 1;
  const bool ok2 = !many.superhub.is_superhub && many.superhub.k_max == 30 &&
                   many.degrees.n_vertices == 274 && many.phase &&
                   many.phase->phase == Phase::MultiHubDecorated && many.phase->n_outlier_hubs == 6;
  return {ok1 && ok2,
          fmt("N=142 k_max=53: superhub=%s (residual %.2f, gap %.2f); N=274 k_max=30: superhub=%s "
              "(residual %.2f, gap %.2f), phase=%s, hubs above line %d",
              one.superhub.is_superhub ? "true" : "false", one.superhub.log_residual,
              one.superhub.degree_gap_ratio, many.superhub.is_superhub ? "true" : "false",
              many.superhub.log_residual, many.superhub.degree_gap_ratio,
              many.phase ? std::string(to_string(many.phase->phase)).c_str() : "Undetermined",
              many.phase ? many.phase->n_outlier_hubs : 0)};
}

// Shared by the crash-detection and MOL-coincidence criteria.
struct CrashRuns {
  int overlap = 0, ntl_inside = 0, mol_inside = 0;
  std::size_t in_windows = 0, in_hub = 0;
  std::size_t coincide_checked = 0, coincide_bad = 0;
};

constexpr std::size_t kRegimeBegin = 250, kRegimeEnd = 500;

CrashRuns& crash_runs() {
  static CrashRuns runs = [] {
    CrashRuns r;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const std::size_t hub = (7 * seed + 3) % 50;
      const HubRegimeParams p{{50, 751, std::vector<double>(50, 0.005), 0.01, seed},
                              hub, 0.9, kRegimeBegin, kRegimeEnd};
      const auto panel = hub_regime_returns(p);
      const auto& hub_ticker = panel.tickers[hub];
      const auto s = evolve(panel, {50, 5}, hub_ticker);
      const auto t = detect_transitions(s);

      auto inside = [&](std::size_t i) {
        return s.windows[i].begin >= kRegimeBegin && s.windows[i].end <= kRegimeEnd;
      };
      for (const auto& iv : t.superhub_intervals) {
        const std::size_t first = s.windows[iv.start].end - 1, last = s.windows[iv.end].end - 1;
        if (iv.hub_ticker == hub_ticker && first < kRegimeEnd && last >= kRegimeBegin) {
          ++r.overlap;
          break;
        }
      }
      if (inside(t.ntl_argmin)) ++r.ntl_inside;
      if (inside(t.mol_argmin)) ++r.mol_inside;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (inside(i)) {
          ++r.in_windows;
          if (s.dynamic_center[i] == hub_ticker) ++r.in_hub;
        }
        if (s.dynamic_center[i] == hub_ticker) {
          ++r.coincide_checked;
          if (s.mol_static[i] != s.mol_dynamic[i]) ++r.coincide_bad;
        }
      }
    }
    return r;
  }();
  return runs;
}

Outcome crash_detection() {
  const auto& r = crash_runs();
  const double share = double(r.in_hub) / double(r.in_windows);
  return {r.overlap >= 19 && r.ntl_inside >= 18 && r.mol_inside >= 18 && share >= 0.9,
          fmt("superhub overlap %d/20 (need 19), NTL argmin inside %d/20, MOL argmin inside %d/20 "
              "(need 18), hub is dynamic center in %.1f%% of %zu in-regime windows (need 90%%)",
              r.overlap, r.ntl_inside, r.mol_inside, 100.0 * share, r.in_windows)};
}

Outcome mol_coincidence() {
  const auto& r = crash_runs();
  std::size_t checked = r.coincide_checked, bad = r.coincide_bad;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto panel = one_factor_returns({30, 501, std::vector<double>(30, 0.005), 0.01, seed});
    const auto s = evolve(panel, {60, 10}, "S000");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.dynamic_center[i] != "S000") continue;
      ++checked;
      if (s.mol_static[i] != s.mol_dynamic[i]) ++bad;
    }
  }
  return {bad == 0 && checked > 0,
          fmt("mol_static == mol_dynamic exactly in %zu/%zu windows centred on the static center",
              checked - bad, checked)};
}

Outcome ultrametricity() {
  std::mt19937_64 rng(77);
  std::size_t pairs = 0, bad = 0;
  for (int i = 0; i < 100; ++i) {
    const auto d = random_distances(20, rng);
    const auto t = prim_mst(d);
    for (std::size_t a = 0; a < 20; ++a) {
      for (std::size_t b = a + 1; b < 20; ++b) {
        ++pairs;
        if (max_path_weight(t, a, b) > d.d(a, b)) ++bad;
      }
    }
  }
  return {bad == 0, fmt("violations %zu over %zu pairs in 100 matrices, N=20", bad, pairs)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  const auto dir = fs::temp_directory_path() / "mstnet_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "params.txt")
      << "n_companies = 40\nn_days = 501\nseed = 11\nbeta = 0.005\nnoise_sigma = 0.01\n"
         "hub_index = 5\ngamma = 0.9\nregime_start = 150\nregime_end = 300\n";
  std::ostringstream out, err;
  if (cli::run({"synth", "--params", (dir / "params.txt").string(), "--out", (dir / "p.csv").string()},
               out, err) != 0) {
    return {false, "synth failed: " + err.str()};
  }
  std::string reference;
  int identical = 0, runs = 0;
  for (const char* threads : {"1", "1", "2", "3", "4", "8", "0"}) {
    const auto o = dir / ("run" + std::to_string(runs));
    if (cli::run({"evolve", (dir / "p.csv").string(), "--window", "60", "--step", "3", "--threads",
                  threads, "--out", o.string()},
                 out, err) != 0) {
      return {false, "evolve failed: " + err.str()};
    }
    const auto bytes = slurp(o / "series.csv") + slurp(o / "transitions.txt") + slurp(o / "dropped.csv");
    if (runs == 0) reference = bytes;
    if (bytes == reference) ++identical;
    ++runs;
  }
  fs::remove_all(dir);
  return {identical == runs,
          fmt("%d/%d evolve runs byte-identical across thread counts {1,1,2,3,4,8,all}", identical, runs)};
}

}  // namespace

int main() {
  criterion("MST oracle equivalence", mst_oracle);
  criterion("Distance recipe", distance_recipe);
  criterion("Analytic metric fixtures", metric_fixtures);
  criterion("Power-law fit exactness", power_law_exactness);
  criterion("Preferential-attachment tree exponent", ba_exponent);
  criterion("Superhub split on reference-shaped fixtures", superhub_split);
  criterion("End-to-end crash detection", crash_detection);
  criterion("Static/dynamic MOL coincidence", mol_coincidence);
  criterion("Subdominant ultrametricity", ultrametricity);
  criterion("Evolve determinism", determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
