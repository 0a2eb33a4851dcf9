#include <doctest.h>

#include <cmath>
#include <limits>
#include <regex>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "mstnet/error.hpp"
#include "mstnet/io.hpp"
#include "mstnet/rolling.hpp"

using namespace mstnet;
using namespace mstnet::testing;

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 2.0, -0.0953101798043249, 1.4142135623730951}) {
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(std::isnan(*parse_double("nan")));
  CHECK_FALSE(parse_double("1.5x").has_value());
  CHECK_FALSE(parse_double("").has_value());
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("edge list round-trip") {
  std::mt19937_64 rng(3);
  const auto tree = prim_mst(random_distances(7, rng));
  std::stringstream ss;
  write_edge_list(ss, tree, {"2005-01-03..2005-12-30", "00ff"});
  const auto back = read_edge_list(ss);
  CHECK(back.tree == tree);
  CHECK(back.header.period == "2005-01-03..2005-12-30");
  CHECK(back.header.config_hash == "00ff");

  std::istringstream broken("ticker_i,ticker_j,weight\nA,B,0.1\nB,A,0.2\n");
  CHECK_THROWS_AS(read_edge_list(broken), Error);
  std::istringstream wrong_n("# n = 3\nticker_i,ticker_j,weight\nA,B,0.1\n");
  CHECK_THROWS_AS(read_edge_list(wrong_n), Error);
}

TEST_CASE("DOT export is a valid undirected graph") {
  const auto tree = make_tree({"A", "B", "C"}, {{0, 1, 0.1}, {1, 2, 1.0 / 3.0}});
  std::ostringstream out;
  write_dot(out, tree);
  const std::string dot = out.str();
  CHECK(dot.rfind("graph \"mst\" {", 0) == 0);
  CHECK(dot.find("->") == std::string::npos);
  const std::regex edge(R"re("([^"]+)" -- "([^"]+)" \[weight=([^\]]+)\];)re");
  std::set<std::string> nodes;
  std::vector<double> weights;
  for (auto it = std::sregex_iterator(dot.begin(), dot.end(), edge); it != std::sregex_iterator(); ++it) {
    nodes.insert((*it)[1]);
    nodes.insert((*it)[2]);
    weights.push_back(*parse_double((*it)[3].str()));
  }
  CHECK(nodes.size() == 3);
  CHECK(weights == std::vector<double>{0.1, 1.0 / 3.0});
  CHECK(dot.back() == '\n');
}

TEST_CASE("matrix round-trip") {
  Matrix m(2, 2, 0.0);
  m(0, 1) = m(1, 0) = 1.0 / 7.0;
  std::stringstream ss;
  write_matrix(ss, {"A", "B"}, m, ';');
  const auto back = read_matrix(ss, ';');
  CHECK(back.tickers == std::vector<std::string>{"A", "B"});
  CHECK(back.values == m);
}

TEST_CASE("metric series round-trip reproduces transitions") {
  MetricSeries s;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::vector<double> ntl{0.9, 0.7, 1.0 / 3.0, 0.8};
  const std::vector<std::optional<Phase>> phases{Phase::PowerLaw, Phase::SuperhubDecorated,
                                                 std::nullopt, Phase::MultiHubDecorated};
  for (std::size_t i = 0; i < 4; ++i) {
    s.windows.push_back({5 * i, 5 * i + 30});
    s.window_end_dates.push_back(Date(2007, 3, 1).add_business_days(int(5 * i)));
    s.ntl.push_back(ntl[i]);
    s.mol_static.push_back(i == 1 ? nan : 1.5 + i);
    s.mol_dynamic.push_back(2.0 - 0.1 * i);
    s.k_max.push_back(int(3 + i));
    s.phase.push_back(phases[i]);
    s.dynamic_center.push_back(i == 1 ? "HUB" : "X");
    s.dropped.emplace_back();
  }
  std::stringstream ss;
  write_metric_series(ss, s);
  const auto back = read_metric_series(ss);
  CHECK(back.ntl == s.ntl);
  CHECK(back.phase == s.phase);
  CHECK(back.window_end_dates == s.window_end_dates);
  CHECK(std::isnan(back.mol_static[1]));
  const auto r = detect_transitions(s);
  const auto rb = detect_transitions(back);
  CHECK(rb.ntl_argmin == r.ntl_argmin);
  CHECK(rb.mol_argmin == r.mol_argmin);
  CHECK(rb.phase_changes == r.phase_changes);
  CHECK(rb.superhub_intervals == r.superhub_intervals);

  std::ostringstream report;
  write_transition_report(report, r, s);
  CHECK(report.str().find("superhub_interval = 1 1") != std::string::npos);
}

TEST_CASE("key-value config") {
  std::istringstream in("# comment\nwindow = 100\n\ncenter=KGHM\n");
  const auto kv = read_key_values(in);
  CHECK(kv.at("window") == "100");
  CHECK(kv.at("center") == "KGHM");
}
