#include "mstnet/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "mstnet/error.hpp"

namespace mstnet {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view line, char delim) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(delim, pos);
    if (next == std::string_view::npos) {
      fields.emplace_back(trim(line.substr(pos)));
      return fields;
    }
    fields.emplace_back(trim(line.substr(pos, next - pos)));
    pos = next + 1;
  }
}

[[noreturn]] void format_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Format, "line " + std::to_string(line) + ": " + what);
}

double require_double(std::string_view text, std::size_t line) {
  const auto v = parse_double(text);
  if (!v) format_error(line, "expected a number, got '" + std::string(text) + "'");
  return *v;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string phase_text(const std::optional<Phase>& p) {
  return p ? std::string(to_string(*p)) : std::string("Undetermined");
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return v;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void write_dot(std::ostream& out, const Tree& tree, std::string_view name) {
  out << "graph " << dot_quote(name) << " {\n";
  for (const auto& t : tree.tickers) out << "  " << dot_quote(t) << ";\n";
  for (const auto& e : tree.edges) {
    out << "  " << dot_quote(tree.tickers[e.u]) << " -- " << dot_quote(tree.tickers[e.v])
        << " [weight=" << format_double(e.weight) << "];\n";
  }
  out << "}\n";
}

void write_edge_list(std::ostream& out, const Tree& tree, const EdgeListHeader& header) {
  out << "# mstnet-tree 1\n";
  out << "# n = " << tree.size() << '\n';
  out << "# period = " << header.period << '\n';
  out << "# config = " << header.config_hash << '\n';
  out << "ticker_i,ticker_j,weight\n";
  for (const auto& e : tree.edges) {
    out << tree.tickers[e.u] << ',' << tree.tickers[e.v] << ',' << format_double(e.weight) << '\n';
  }
}

EdgeListFile read_edge_list(std::istream& in) {
  EdgeListFile file;
  std::optional<std::size_t> declared_n;
  std::vector<std::string> tickers;
  std::map<std::string, std::size_t> index;
  std::vector<Edge> edges;
  bool header_seen = false;

  auto vertex = [&](const std::string& t) {
    auto [it, inserted] = index.emplace(t, tickers.size());
    if (inserted) tickers.push_back(t);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      const auto body = trim(view.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const auto key = trim(body.substr(0, eq));
      const auto value = trim(body.substr(eq + 1));
      if (key == "n") {
        std::size_t n = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
        if (ec != std::errc{} || ptr != value.data() + value.size()) {
          format_error(line_no, "bad vertex count");
        }
        declared_n = n;
      } else if (key == "period") {
        file.header.period = std::string(value);
      } else if (key == "config") {
        file.header.config_hash = std::string(value);
      }
      continue;
    }
    if (!header_seen) {
      if (view != "ticker_i,ticker_j,weight") format_error(line_no, "expected column header");
      header_seen = true;
      continue;
    }
    const auto fields = split(view, ',');
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
      format_error(line_no, "expected ticker_i,ticker_j,weight");
    }
    const auto u = vertex(fields[0]);
    const auto v = vertex(fields[1]);
    edges.push_back({u, v, require_double(fields[2], line_no)});
  }
  if (!header_seen) throw Error(ErrorKind::Format, "missing column header");

  if (edges.empty() && declared_n.value_or(0) > 1) {
    throw Error(ErrorKind::Format, "no edges for a tree of " + std::to_string(*declared_n));
  }
  // Canonical vertex order: sorted tickers.
  std::vector<std::string> sorted = tickers;
  std::sort(sorted.begin(), sorted.end());
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < sorted.size(); ++i) pos[sorted[i]] = i;
  for (auto& e : edges) {
    e.u = pos[tickers[e.u]];
    e.v = pos[tickers[e.v]];
  }
  file.tree = make_tree(std::move(sorted), std::move(edges));
  if (declared_n && *declared_n != file.tree.size()) {
    throw Error(ErrorKind::Format, "header declares " + std::to_string(*declared_n) +
                                       " vertices, edges cover " +
                                       std::to_string(file.tree.size()));
  }
  if (!is_spanning_tree(file.tree)) throw Error(ErrorKind::Format, "edges do not form a tree");
  return file;
}

void write_matrix(std::ostream& out, const std::vector<std::string>& tickers, const Matrix& m,
                  char delimiter) {
  for (std::size_t i = 0; i < tickers.size(); ++i) {
    if (i) out << delimiter;
    out << tickers[i];
  }
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << delimiter;
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

LabelledMatrix read_matrix(std::istream& in, char delimiter) {
  LabelledMatrix out;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorKind::Format, "empty matrix file");
  ++line_no;
  out.tickers = split(line, delimiter);
  const std::size_t n = out.tickers.size();
  out.values = Matrix(n, n);
  std::size_t r = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (r == n) format_error(line_no, "more than " + std::to_string(n) + " rows");
    const auto fields = split(line, delimiter);
    if (fields.size() != n) format_error(line_no, "expected " + std::to_string(n) + " values");
    for (std::size_t c = 0; c < n; ++c) out.values(r, c) = require_double(fields[c], line_no);
    ++r;
  }
  if (r != n) throw Error(ErrorKind::Format, "expected " + std::to_string(n) + " rows");
  return out;
}

void write_price_table(std::ostream& out, const PricePanel& panel, char delimiter) {
  out << "date" << delimiter << "ticker" << delimiter << "close\n";
  for (std::size_t i = 0; i < panel.tickers.size(); ++i) {
    for (std::size_t t = 0; t < panel.dates.size(); ++t) {
      out << panel.dates[t].to_string() << delimiter << panel.tickers[i] << delimiter
          << format_double(panel.prices(i, t)) << '\n';
    }
  }
}

void write_metric_series(std::ostream& out, const MetricSeries& s) {
  out << "end_date,ntl,mol_static,mol_dynamic,k_max,phase,dynamic_center\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << s.window_end_dates[i].to_string() << ',' << format_double(s.ntl[i]) << ','
        << format_double(s.mol_static[i]) << ',' << format_double(s.mol_dynamic[i]) << ','
        << s.k_max[i] << ',' << phase_text(s.phase[i]) << ',' << s.dynamic_center[i] << '\n';
  }
}

MetricSeries read_metric_series(std::istream& in) {
  MetricSeries s;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) ||
      trim(line) != "end_date,ntl,mol_static,mol_dynamic,k_max,phase,dynamic_center") {
    throw Error(ErrorKind::Format, "line 1: unexpected metric series header");
  }
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 7) format_error(line_no, "expected 7 fields");
    const auto date = Date::parse(f[0]);
    if (!date) format_error(line_no, "bad date '" + f[0] + "'");
    s.window_end_dates.push_back(*date);
    s.ntl.push_back(require_double(f[1], line_no));
    s.mol_static.push_back(require_double(f[2], line_no));
    s.mol_dynamic.push_back(require_double(f[3], line_no));
    int k = 0;
    const auto [ptr, ec] = std::from_chars(f[4].data(), f[4].data() + f[4].size(), k);
    if (ec != std::errc{} || ptr != f[4].data() + f[4].size()) format_error(line_no, "bad k_max");
    s.k_max.push_back(k);
    if (f[5] == "Undetermined") {
      s.phase.emplace_back(std::nullopt);
    } else if (const auto p = parse_phase(f[5])) {
      s.phase.emplace_back(*p);
    } else {
      format_error(line_no, "unknown phase '" + f[5] + "'");
    }
    s.dynamic_center.push_back(f[6]);
    s.dropped.emplace_back();
  }
  return s;
}

void write_transition_report(std::ostream& out, const TransitionReport& r,
                             const MetricSeries& series) {
  out << "ntl_argmin = " << r.ntl_argmin << ' ' << r.ntl_argmin_date.to_string() << ' '
      << format_double(series.ntl[r.ntl_argmin]) << '\n';
  out << "mol_argmin = " << r.mol_argmin << ' ' << r.mol_argmin_date.to_string() << ' '
      << format_double(series.mol_dynamic[r.mol_argmin]) << '\n';
  for (const auto& c : r.phase_changes) {
    out << "phase_change = " << c.index << ' ' << series.window_end_dates[c.index].to_string()
        << ' ' << phase_text(c.from) << ' ' << phase_text(c.to) << '\n';
  }
  for (const auto& iv : r.superhub_intervals) {
    out << "superhub_interval = " << iv.start << ' ' << iv.end << ' '
        << series.window_end_dates[iv.start].to_string() << ' '
        << series.window_end_dates[iv.end].to_string() << ' ' << iv.hub_ticker << '\n';
  }
}

std::map<std::string, std::string> read_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) format_error(line_no, "expected key = value");
    const auto key = trim(view.substr(0, eq));
    if (key.empty()) format_error(line_no, "empty key");
    out[std::string(key)] = std::string(trim(view.substr(eq + 1)));
  }
  return out;
}

}  // namespace mstnet
