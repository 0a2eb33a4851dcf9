#include "mstnet/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "mstnet/correlation.hpp"
#include "mstnet/ingestion.hpp"
#include "mstnet/io.hpp"
#include "mstnet/metrics.hpp"
#include "mstnet/mst.hpp"
#include "mstnet/rolling.hpp"
#include "mstnet/synth.hpp"

namespace mstnet::cli {

namespace fs = std::filesystem;

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Io: return kExitIo;
    case ErrorKind::UnderdeterminedFit: return kExitUnderdeterminedFit;
    default: return kExitValidation;
  }
}

namespace {

struct RunConfig {
  std::string input;
  std::string start;
  std::string end;
  WindowSpec window;
  std::string center;
  Thresholds thresholds;
  std::string out;
  std::vector<std::string> formats;
  char delimiter = ',';
  int threads = 0;

  /// Everything that can change results; the thread count cannot.
  std::string fingerprint() const {
    std::ostringstream s;
    s << "input=" << fs::path(input).filename().string() << ";start=" << start << ";end=" << end
      << ";window=" << window.width << ";step=" << window.step << ";center=" << center
      << ";tau=" << format_double(thresholds.tau) << ";gap=" << format_double(thresholds.gap)
      << ";tau_hub=" << format_double(thresholds.tau_hub) << ";delimiter=" << delimiter;
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(s.str());
    return hex.str();
  }
};

/// Error annotated with the pipeline stage that raised it.
struct StageError {
  std::string stage;
  Error error;
};

template <typename F>
auto in_stage(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw StageError{stage, e};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "failed reading '" + path + "'");
  return buf.str();
}

/// Output files are staged in memory and only written once every stage has
/// succeeded, so a failing run leaves nothing behind.
class OutputSet {
 public:
  std::ostream& add(std::string name) {
    files_.emplace_back(std::move(name), std::make_unique<std::ostringstream>());
    return *files_.back().second;
  }

  void commit(const fs::path& dir) const {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create '" + dir.string() + "': " + ec.message());
    for (const auto& [name, content] : files_) {
      const auto path = dir / name;
      std::ofstream f(path, std::ios::binary | std::ios::trunc);
      f << content->str();
      if (!f) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    }
  }

 private:
  std::vector<std::pair<std::string, std::unique_ptr<std::ostringstream>>> files_;
};

void write_single(const std::string& path, const std::string& content, std::ostream& fallback) {
  if (path.empty()) {
    fallback << content;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << content;
  if (!f) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
}

Date parse_date_option(const std::string& text, const char* name) {
  const auto d = Date::parse(text);
  if (!d) throw Error(ErrorKind::Configuration, std::string(name) + " is not a YYYY-MM-DD date: '" + text + "'");
  return *d;
}

void validate(const RunConfig& cfg) {
  const auto& t = cfg.thresholds;
  if (!(t.tau > 0.0) || !(t.gap > 0.0) || !(t.tau_hub > 0.0)) {
    throw Error(ErrorKind::Configuration, "thresholds must be positive");
  }
}

struct LoadedPanel {
  Period period;
  std::vector<std::string> dropped;  // incomplete over the period
  std::size_t rejected_rows = 0;
  ReturnPanel returns;
};

LoadedPanel load(const RunConfig& cfg, std::ostream& err) {
  validate(cfg);
  const std::string text = in_stage("input", [&] { return read_file(cfg.input); });
  const auto parsed = in_stage("ingestion", [&] {
    return parse_price_table(std::string_view(text), FormatSpec{cfg.delimiter});
  });
  for (const auto& r : parsed.rejected) {
    err << "mstnet: ingestion: " << cfg.input << ':' << r.line << ": rejected: " << r.message << '\n';
  }
  return in_stage("ingestion", [&] {
    LoadedPanel out;
    const Period observed = observed_period(parsed.series);
    out.period.start = cfg.start.empty() ? observed.start : parse_date_option(cfg.start, "--start");
    out.period.end = cfg.end.empty() ? observed.end : parse_date_option(cfg.end, "--end");
    auto aligned = align_and_filter(parsed.series, out.period);
    out.dropped = std::move(aligned.dropped);
    out.rejected_rows = parsed.rejected.size();
    out.returns = log_returns(aligned.panel);
    return out;
  });
}

std::string period_text(const Period& p) { return p.start.to_string() + ".." + p.end.to_string(); }

std::string join(const std::vector<std::string>& items, char sep = ' ') {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

void write_report(std::ostream& r, const RunConfig& cfg, const LoadedPanel& data,
                  const WindowAnalysis& w) {
  const auto& a = w.assessment;
  r << "command = analyze\n";
  r << "period = " << period_text(data.period) << '\n';
  r << "config = " << cfg.fingerprint() << '\n';
  r << "n = " << w.tree.size() << '\n';
  r << "return_days = " << data.returns.columns() << '\n';
  r << "rejected_rows = " << data.rejected_rows << '\n';
  r << "dropped_incomplete = " << join(data.dropped) << '\n';
  r << "dropped_degenerate = " << join(w.dropped) << '\n';
  r << "ntl = " << format_double(w.ntl) << '\n';
  r << "total_weight = " << format_double(total_weight(w.tree)) << '\n';
  r << "dynamic_center = " << w.dynamic_center << '\n';
  r << "mol_dynamic = " << format_double(w.mol_dynamic) << '\n';
  r << "static_center = " << cfg.center << '\n';
  r << "mol_static = " << format_double(w.mol_static) << '\n';
  r << "hub = " << a.superhub.hub_ticker << '\n';
  r << "k_max = " << a.superhub.k_max << '\n';
  r << "k_second = " << a.superhub.k_second << '\n';
  r << "log_residual = " << format_double(a.superhub.log_residual) << '\n';
  r << "degree_gap_ratio = " << format_double(a.superhub.degree_gap_ratio) << '\n';
  r << "is_superhub = " << (a.superhub.is_superhub ? "true" : "false") << '\n';
  if (a.fit) {
    r << "fit = ok\n";
    r << "fit_slope = " << format_double(a.fit->slope) << '\n';
    r << "fit_slope_stderr = " << format_double(a.fit->slope_stderr) << '\n';
    r << "fit_intercept = " << format_double(a.fit->intercept) << '\n';
    r << "fit_k_range = " << a.fit->k_min << ' ' << a.fit->k_max << '\n';
    std::vector<std::string> excluded;
    for (const auto& [k, res] : a.fit->excluded) excluded.push_back(std::to_string(k));
    r << "fit_excluded = " << join(excluded) << '\n';
  } else {
    r << "fit = underdetermined\n";
  }
  r << "phase = " << (a.phase ? std::string(to_string(a.phase->phase)) : "Undetermined") << '\n';
  r << "n_outlier_hubs = " << (a.phase ? a.phase->n_outlier_hubs : 0) << '\n';
  for (const auto& [k, c] : a.degrees.counts) {
    r << "degree." << k << " = " << c << ' ' << format_double(a.degrees.f.at(k)) << '\n';
  }
}

int cmd_analyze(const RunConfig& cfg, std::ostream& err) {
  const auto data = load(cfg, err);
  if (!cfg.center.empty() &&
      std::find(data.returns.tickers.begin(), data.returns.tickers.end(), cfg.center) ==
          data.returns.tickers.end()) {
    throw StageError{"metrics", Error(ErrorKind::MissingVertex,
                                      "center '" + cfg.center + "' is not in the panel")};
  }
  const auto result = in_stage("analysis", [&] {
    return analyze_window(data.returns, Window{0, data.returns.columns()}, cfg.center,
                          cfg.thresholds);
  });

  const auto formats = cfg.formats.empty() ? std::vector<std::string>{"dot", "edges"} : cfg.formats;
  const auto want = [&](std::string_view f) {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  };

  OutputSet outputs;
  if (want("dot")) write_dot(outputs.add("tree.dot"), result.tree);
  if (want("edges")) {
    write_edge_list(outputs.add("tree.edges"), result.tree,
                    EdgeListHeader{period_text(data.period), cfg.fingerprint()});
  }
  if (want("csv")) {
    in_stage("correlation", [&] {
      ReturnPanel usable = data.returns;
      if (!result.dropped.empty()) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < usable.companies(); ++i) {
          if (std::find(result.dropped.begin(), result.dropped.end(), usable.tickers[i]) ==
              result.dropped.end()) {
            keep.push_back(i);
          }
        }
        usable = select_rows(usable, keep);
      }
      const auto corr = pearson_matrix(usable);
      const auto dist = to_distance(corr);
      write_matrix(outputs.add("correlation.csv"), corr.tickers, corr.rho);
      write_matrix(outputs.add("distance.csv"), dist.tickers, dist.d);
      return 0;
    });
  }
  write_report(outputs.add("report.txt"), cfg, data, result);
  in_stage("output", [&] {
    outputs.commit(cfg.out.empty() ? fs::path(".") : fs::path(cfg.out));
    return 0;
  });

  if (!result.assessment.phase) {
    err << "mstnet: metrics: " << to_string(ErrorKind::UnderdeterminedFit) << ": tree has "
        << result.assessment.degrees.counts.size()
        << " distinct degrees; phase undetermined (outputs written)\n";
    return kExitUnderdeterminedFit;
  }
  return kExitOk;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& err) {
  const auto data = load(cfg, err);
  std::string center = cfg.center;
  if (center.empty()) {
    // Default reference company: the hub of the whole-span tree.
    center = in_stage("analysis", [&] {
      return analyze_window(data.returns, Window{0, data.returns.columns()}, "", cfg.thresholds)
          .dynamic_center;
    });
  }
  const auto series = in_stage("rolling", [&] {
    return evolve(data.returns, cfg.window, center, EvolveOptions{cfg.thresholds, cfg.threads});
  });
  const auto report = in_stage("rolling", [&] { return detect_transitions(series); });

  OutputSet outputs;
  write_metric_series(outputs.add("series.csv"), series);
  auto& t = outputs.add("transitions.txt");
  t << "period = " << period_text(data.period) << '\n';
  t << "config = " << cfg.fingerprint() << '\n';
  t << "static_center = " << center << '\n';
  t << "windows = " << series.size() << '\n';
  write_transition_report(t, report, series);
  auto& d = outputs.add("dropped.csv");
  d << "end_date,ticker\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (const auto& tk : series.dropped[i]) d << series.window_end_dates[i].to_string() << ',' << tk << '\n';
  }
  in_stage("output", [&] {
    outputs.commit(cfg.out.empty() ? fs::path(".") : fs::path(cfg.out));
    return 0;
  });
  return kExitOk;
}

std::vector<double> parse_list(const std::string& text, const char* key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = parse_double(item);
    if (!v) throw Error(ErrorKind::Configuration, std::string("bad number in ") + key + ": '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

std::uint64_t parse_unsigned(const std::string& text, const char* key) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Configuration, std::string(key) + " must be a non-negative integer");
  }
  return v;
}

int cmd_synth(const std::string& params_path, const std::string& out_path, std::ostream& out) {
  const std::string text = in_stage("input", [&] { return read_file(params_path); });
  const auto content = in_stage("synth", [&] {
    std::istringstream in(text);
    auto kv = read_key_values(in);
    auto take = [&](const char* key) -> std::optional<std::string> {
      auto it = kv.find(key);
      if (it == kv.end()) return std::nullopt;
      std::string v = it->second;
      kv.erase(it);
      return v;
    };
    auto need = [&](const char* key) {
      auto v = take(key);
      if (!v) throw Error(ErrorKind::Configuration, std::string("missing parameter '") + key + "'");
      return *v;
    };

    FactorModelParams base;
    base.n_companies = parse_unsigned(need("n_companies"), "n_companies");
    base.n_days = parse_unsigned(need("n_days"), "n_days");
    base.seed = parse_unsigned(need("seed"), "seed");
    if (auto s = take("noise_sigma")) base.noise_sigma = parse_list(*s, "noise_sigma").at(0);
    const auto betas = take("betas");
    const auto beta = take("beta");
    if (betas && beta) throw Error(ErrorKind::Configuration, "give either beta or betas");
    if (betas) {
      base.betas = parse_list(*betas, "betas");
    } else {
      const auto b = parse_list(beta.value_or("1"), "beta");
      if (b.size() != 1) throw Error(ErrorKind::Configuration, "beta takes a single value");
      base.betas.assign(base.n_companies, b[0]);
    }

    const auto hub = take("hub_index");
    const auto gamma = take("gamma");
    const auto rs = take("regime_start");
    const auto re = take("regime_end");
    if (!kv.empty()) throw Error(ErrorKind::Configuration, "unknown parameter '" + kv.begin()->first + "'");

    ReturnPanel returns;
    if (hub || gamma || rs || re) {
      if (!(hub && gamma && rs && re)) {
        throw Error(ErrorKind::Configuration,
                    "hub regime needs hub_index, gamma, regime_start and regime_end");
      }
      HubRegimeParams p;
      p.base = base;
      p.hub_index = parse_unsigned(*hub, "hub_index");
      p.gamma = parse_list(*gamma, "gamma").at(0);
      p.regime_start = parse_unsigned(*rs, "regime_start");
      p.regime_end = parse_unsigned(*re, "regime_end");
      returns = hub_regime_returns(p);
    } else {
      returns = one_factor_returns(base);
    }
    std::ostringstream csv;
    write_price_table(csv, prices_from_returns(returns));
    return csv.str();
  });
  in_stage("output", [&] {
    write_single(out_path, content, out);
    return 0;
  });
  return kExitOk;
}

int cmd_export_dot(const RunConfig& cfg, std::ostream& out) {
  const std::string text = in_stage("input", [&] { return read_file(cfg.input); });
  const auto content = in_stage("export", [&] {
    std::istringstream in(text);
    const auto file = read_edge_list(in);
    std::ostringstream dot;
    write_dot(dot, file.tree);
    return dot.str();
  });
  in_stage("output", [&] {
    write_single(cfg.out, content, out);
    return 0;
  });
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string params_path;
  std::string delimiter = ",";

  CLI::App app{"Correlation-based minimal spanning tree analysis of stock price panels", "mstnet"};
  app.set_config("--config", "", "Flat key = value file providing option defaults");
  app.require_subcommand(1, 1);

  app.add_option("--input", cfg.input, "Input file (price table, or tree edge list for export-dot)");
  app.add_option("--start", cfg.start, "First date of the analysis period (YYYY-MM-DD)");
  app.add_option("--end", cfg.end, "Last date of the analysis period (YYYY-MM-DD)");
  app.add_option("--window", cfg.window.width, "Rolling window width in trading days")
      ->capture_default_str();
  app.add_option("--step", cfg.window.step, "Rolling window step in trading days")
      ->capture_default_str();
  app.add_option("--center", cfg.center, "Static central company for the mean occupation layer");
  app.add_option("--tau", cfg.thresholds.tau, "Superhub residual threshold (decades)")
      ->capture_default_str();
  app.add_option("--gap", cfg.thresholds.gap, "Superhub degree gap ratio k_max/k_second")
      ->capture_default_str();
  app.add_option("--tau-hub", cfg.thresholds.tau_hub, "Outlying-hub residual threshold (decades)")
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Output directory (analyze, evolve) or file (synth, export-dot)");
  app.add_option("--format", cfg.formats, "analyze exports: dot, edges, csv")
      ->check(CLI::IsMember({"dot", "edges", "csv"}));
  app.add_option("--delimiter", delimiter, "Input field delimiter")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads for evolve (0: all)")
      ->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "One-shot tree, degree statistics and phase");
  auto* evolve_cmd = app.add_subcommand("evolve", "Rolling-window metric series and transitions");
  auto* synth = app.add_subcommand("synth", "Generate a synthetic price table");
  auto* export_dot = app.add_subcommand("export-dot", "Convert a tree edge list to DOT");
  for (auto* sub : {analyze, evolve_cmd, export_dot}) {
    sub->fallthrough();
    sub->add_option("input", cfg.input, "Input file");
  }
  synth->fallthrough();
  synth->add_option("--params,params", params_path, "Synthetic panel parameter file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (delimiter.size() != 1) throw StageError{"config", Error(ErrorKind::Configuration, "delimiter must be one character")};
    cfg.delimiter = delimiter.front();
    if (command != "synth" && cfg.input.empty()) {
      throw StageError{"config", Error(ErrorKind::Configuration, "no input file given")};
    }
    if (command == "analyze") return cmd_analyze(cfg, err);
    if (command == "evolve") return cmd_evolve(cfg, err);
    if (command == "synth") return cmd_synth(params_path, cfg.out, out);
    return cmd_export_dot(cfg, out);
  } catch (const StageError& e) {
    err << "mstnet " << command << ": " << e.stage << ": " << to_string(e.error.kind()) << ": "
        << e.error.what() << '\n';
    return exit_code(e.error.kind());
  } catch (const Error& e) {
    err << "mstnet " << command << ": " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "mstnet " << command << ": internal error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace mstnet::cli
