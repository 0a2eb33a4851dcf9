#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mstnet/correlation.hpp"
#include "mstnet/ingestion.hpp"
#include "mstnet/mst.hpp"
#include "mstnet/rolling.hpp"

namespace mstnet {

/// 17 significant digits (exact round trip); "nan", "inf", "-inf" for
/// non-finite values.
std::string format_double(double value);
std::optional<double> parse_double(std::string_view text);

/// 64-bit FNV-1a, used to fingerprint run configurations.
std::uint64_t fnv1a(std::string_view text);

// --- trees ------------------------------------------------------------------

/// Undirected DOT graph, one node statement per vertex and the weight of each
/// edge as an attribute.
void write_dot(std::ostream& out, const Tree& tree, std::string_view name = "mst");

struct EdgeListHeader {
  std::string period;  // "YYYY-MM-DD..YYYY-MM-DD", may be empty
  std::string config_hash;
};

/// Line-oriented tree file:
///
///     # mstnet-tree 1
///     # n = 3
///     # period = 2005-01-03..2006-03-09
///     # config = 9c1f...
///     ticker_i,ticker_j,weight
///     A,B,0.5
///
/// Isolated vertices cannot occur, so the vertex set is implied by the edges.
void write_edge_list(std::ostream& out, const Tree& tree, const EdgeListHeader& header = {});

struct EdgeListFile {
  EdgeListHeader header;
  Tree tree;
};

/// Error(Format) on malformed content or when the edges do not form a
/// spanning tree of `n` vertices.
EdgeListFile read_edge_list(std::istream& in);

// --- matrices -----------------------------------------------------------------

/// Header line of N tickers, then N rows of N values.
void write_matrix(std::ostream& out, const std::vector<std::string>& tickers, const Matrix& m,
                  char delimiter = ',');

struct LabelledMatrix {
  std::vector<std::string> tickers;
  Matrix values;
};

LabelledMatrix read_matrix(std::istream& in, char delimiter = ',');

// --- price tables -------------------------------------------------------------

/// Ingestion format, rows grouped by ticker then date.
void write_price_table(std::ostream& out, const PricePanel& panel, char delimiter = ',');

// --- rolling outputs ----------------------------------------------------------

/// Columns: end_date,ntl,mol_static,mol_dynamic,k_max,phase,dynamic_center.
void write_metric_series(std::ostream& out, const MetricSeries& series);
/// Reads back the columns written above; windows and dropped lists are not
/// part of the file and stay empty.
MetricSeries read_metric_series(std::istream& in);

void write_transition_report(std::ostream& out, const TransitionReport& report,
                             const MetricSeries& series);

// --- configuration ------------------------------------------------------------

/// `key = value` lines; blank lines and `#` comments ignored.
std::map<std::string, std::string> read_key_values(std::istream& in);

}  // namespace mstnet
