// szilard: command-line front end for the many-body Szilard engine.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "szilard/baselines.hpp"
#include "szilard/engine.hpp"
#include "szilard/errors.hpp"
#include "szilard/spectrum.hpp"
#include "szilard/spectrum_store.hpp"
#include "szilard/units.hpp"

#ifndef SZILARD_VERSION
#define SZILARD_VERSION "dev"
#endif

namespace {

using namespace szilard;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnconverged = 2;

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
  bool geometric = false;

  // lo:hi:count[:log]
  static Range parse(const std::string& text) {
    Range r;
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 3 || parts.size() > 4) {
      throw InvalidParameter("range must look like lo:hi:count[:log], got '" + text + "'");
    }
    try {
      r.lo = std::stod(parts[0]);
      r.hi = std::stod(parts[1]);
      r.count = std::stoi(parts[2]);
    } catch (const std::exception&) {
      throw InvalidParameter("unreadable range '" + text + "'");
    }
    if (parts.size() == 4) {
      if (parts[3] != "log" && parts[3] != "lin") throw InvalidParameter("range spacing must be lin or log");
      r.geometric = parts[3] == "log";
    }
    if (r.count < 1) throw InvalidParameter("range needs a positive count");
    if (r.count > 1 && !(r.hi > r.lo)) throw InvalidParameter("range must be increasing");
    return r;
  }
  std::vector<double> values() const { return axis_values(lo, hi, count, geometric); }
};

struct RunConfig {
  std::string command;
  int n = 1;
  double g = 0.0;
  double t = 1.0;  // units of E1
  std::string t_range;
  std::string g_range;
  double ins = 0.5;
  std::string ins_range;
  int modes = 0;
  double e_cut = 0.0;  // units of E1
  double tol = 1e-4;
  std::string out;
  std::string format = "csv";
  std::string baseline = "exact";
  std::string free = "ins";
  std::string cache_dir;
  std::string cache_action;
  int threads = 1;

  json to_json() const {
    json j;
    j["command"] = command;
    j["n"] = n;
    j["g"] = g;
    j["t"] = t;
    j["t-range"] = t_range;
    j["g-range"] = g_range;
    j["ins"] = ins;
    j["ins-range"] = ins_range;
    j["modes"] = modes;
    j["e-cut"] = e_cut;
    j["tol"] = tol;
    j["format"] = format;
    j["baseline"] = baseline;
    if (command == "optimize") j["free"] = free;
    return j;
  }
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string config_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt(v.get<double>());
  return v.dump();
}

std::optional<std::filesystem::path> cache_directory(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return std::filesystem::path(cfg.cache_dir);
  return SpectrumStore::directory_from_env();
}

struct Context {
  RunConfig cfg;
  Baseline baseline = Baseline::kExact;
  std::shared_ptr<SpectrumStore> store;
  std::shared_ptr<SpectrumSolver> solver;
  std::unique_ptr<MediumFactory> factory;

  explicit Context(const RunConfig& c) : cfg(c) {
    const auto b = parse_baseline(cfg.baseline);
    if (!b) throw InvalidParameter("unknown baseline '" + cfg.baseline + "'");
    baseline = *b;
    if (cfg.n < 1 || cfg.n > kMaxFockParticles) {
      throw InvalidParameter("--n must lie in 1.." + std::to_string(kMaxFockParticles));
    }
    if (!(cfg.t > 0.0)) throw InvalidParameter("--t must be positive");
    if (cfg.format != "csv" && cfg.format != "json") throw InvalidParameter("--format must be csv or json");
    if (baseline == Baseline::kExact) {
      SpectrumOptions opts;
      opts.throw_on_unconverged = false;
      opts.z_tol = cfg.tol;
      opts.mode_cap = cfg.modes;
      opts.energy_cutoff = cfg.e_cut;
      if (const auto dir = cache_directory(cfg)) store = std::make_shared<SpectrumStore>(*dir);
      solver = std::make_shared<SpectrumSolver>(opts, store);
    }
    factory = std::make_unique<MediumFactory>(baseline, solver);
  }

  EngineParams params() const {
    EngineParams p;
    p.n_particles = cfg.n;
    p.coupling = cfg.g;
    p.temperature = temperature_from_e1(cfg.t);
    return p;
  }

  void report_stats() const {
    if (!solver) return;
    const auto s = solver->stats();
    std::cerr << "diagonalizations=" << s.diagonalizations << " cache_hits=" << s.store_hits
              << '\n';
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw StoreError("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_header(std::ostream& os, const RunConfig& cfg) {
  os << "# szilard " << SZILARD_VERSION << '\n';
  const json j = cfg.to_json();
  for (const auto& [k, v] : j.items()) os << "# " << k << '=' << config_value(v) << '\n';
}

std::vector<std::string> point_columns(int n, const std::string& axis) {
  std::vector<std::string> cols{axis, "ratio", "w_insert", "w_measure", "w_expand",
                                "w_remove", "w_total", "info", "plan_ins"};
  for (int i = 0; i <= n; ++i) cols.push_back("p_" + std::to_string(i));
  for (int i = 0; i <= n; ++i) cols.push_back("rem_" + std::to_string(i));
  cols.insert(cols.end(), {"converged", "delta_log_z", "error"});
  return cols;
}

double axis_out(ScanAxis axis, double v) {
  return axis == ScanAxis::kTemperature ? temperature_in_e1(v) : v;
}

std::vector<std::string> point_row(const ScanPoint& pt, int n, double axis_value) {
  std::vector<std::string> row{fmt(axis_value)};
  const auto& w = pt.work;
  if (pt.ok) {
    for (double v : {w.ratio, w.w_insert, w.w_measure, w.w_expand, w.w_remove, w.w_total, w.info,
                     pt.plan.insertion}) {
      row.push_back(fmt(v));
    }
    for (double p : w.probabilities) row.push_back(fmt(p));
    for (double r : pt.plan.removals) row.push_back(fmt(r));
  } else {
    for (int i = 0; i < 8 + 2 * (n + 1); ++i) row.push_back("nan");
  }
  row.push_back(pt.ok && pt.convergence.converged ? "1" : "0");
  row.push_back(fmt(pt.convergence.delta_log_z));
  std::string err = pt.error;
  for (char& c : err) {
    if (c == ',' || c == '\n') c = ';';
  }
  row.push_back(err);
  return row;
}

json point_json(const ScanPoint& pt, const std::string& axis, double axis_value) {
  json j;
  j[axis] = axis_value;
  j["ok"] = pt.ok;
  if (pt.ok) {
    const auto& w = pt.work;
    j["ratio"] = w.ratio;
    j["w_insert"] = w.w_insert;
    j["w_measure"] = w.w_measure;
    j["w_expand"] = w.w_expand;
    j["w_remove"] = w.w_remove;
    j["w_total"] = w.w_total;
    j["closed_form"] = w.closed_form;
    j["info"] = w.info;
    j["ins"] = pt.plan.insertion;
    j["p"] = w.probabilities;
    j["removals"] = pt.plan.removals;
  } else {
    j["error"] = pt.error;
  }
  j["converged"] = pt.ok && pt.convergence.converged;
  j["delta_log_z"] = pt.convergence.delta_log_z;
  return j;
}

void write_table(std::ostream& os, const RunConfig& cfg, const std::string& axis,
                 ScanAxis axis_kind, const std::vector<ScanPoint>& points) {
  if (cfg.format == "json") {
    json doc;
    doc["version"] = SZILARD_VERSION;
    doc["config"] = cfg.to_json();
    doc["points"] = json::array();
    for (const auto& pt : points) {
      doc["points"].push_back(point_json(pt, axis, axis_out(axis_kind, pt.axis_value)));
    }
    os << doc.dump(2) << '\n';
    return;
  }
  write_header(os, cfg);
  const auto cols = point_columns(cfg.n, axis);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& pt : points) {
    const auto row = point_row(pt, cfg.n, axis_out(axis_kind, pt.axis_value));
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

void warn_perturbative(const Context& ctx, const EngineParams& p) {
  if (ctx.baseline != Baseline::kPerturbative) return;
  const PerturbativeMedium m(p.n_particles, p.coupling, p.temperature);
  if (!m.valid()) {
    std::cerr << "warning: perturbative baseline outside its validity range (weak coupling, "
                 "k_BT <= E1)\n";
  }
}

int cmd_work(const RunConfig& cfg) {
  Context ctx(cfg);
  const EngineParams p = ctx.params();
  warn_perturbative(ctx, p);
  ScanOptions opts;
  opts.axis = ScanAxis::kInsertion;
  opts.values = {cfg.ins};
  const auto points = scan(*ctx.factory, p, opts);
  Output out(cfg.out);
  write_table(out.os(), cfg, "ins", ScanAxis::kInsertion, points);
  ctx.report_stats();
  const auto& pt = points.front();
  if (!pt.ok) {
    std::cerr << "error: " << pt.error << '\n';
    return kExitError;
  }
  if (!pt.convergence.converged) {
    std::cerr << "error: basis not converged, achieved |delta ln Z| = "
              << fmt(pt.convergence.delta_log_z) << " (tolerance " << fmt(cfg.tol)
              << "); raise --e-cut or loosen --tol\n";
    return kExitUnconverged;
  }
  return kExitOk;
}

std::pair<ScanAxis, std::vector<double>> scan_axis(const RunConfig& cfg) {
  int given = int(!cfg.t_range.empty()) + int(!cfg.g_range.empty()) + int(!cfg.ins_range.empty());
  if (given != 1) throw InvalidParameter("scan needs exactly one of --t-range, --g-range, --ins-range");
  if (!cfg.t_range.empty()) {
    auto v = Range::parse(cfg.t_range).values();
    for (double& t : v) {
      if (!(t > 0.0)) throw InvalidParameter("temperatures must be positive");
      t = temperature_from_e1(t);
    }
    return {ScanAxis::kTemperature, v};
  }
  if (!cfg.g_range.empty()) return {ScanAxis::kCoupling, Range::parse(cfg.g_range).values()};
  auto v = Range::parse(cfg.ins_range).values();
  for (double x : v) {
    if (!(x > 0.0 && x < 1.0)) throw InvalidParameter("insertion positions must lie in (0, 1)");
  }
  return {ScanAxis::kInsertion, v};
}

std::vector<ScanPoint> run_scan(const Context& ctx) {
  const auto [axis, values] = scan_axis(ctx.cfg);
  ScanOptions opts;
  opts.axis = axis;
  opts.values = values;
  opts.insertion = ctx.cfg.ins;
  opts.threads = ctx.cfg.threads;
  warn_perturbative(ctx, ctx.params());
  return scan(*ctx.factory, ctx.params(), opts);
}

int cmd_scan(const RunConfig& cfg) {
  Context ctx(cfg);
  const auto points = run_scan(ctx);
  const ScanAxis axis = scan_axis(cfg).first;
  Output out(cfg.out);
  write_table(out.os(), cfg, axis_name(axis), axis, points);
  ctx.report_stats();
  std::size_t good = 0;
  for (const auto& pt : points) good += pt.ok && pt.convergence.converged;
  if (good * 10 < points.size() * 9) {
    std::cerr << "error: only " << good << " of " << points.size() << " points converged\n";
    return kExitUnconverged;
  }
  return kExitOk;
}

int cmd_optimize(const RunConfig& cfg) {
  Context ctx(cfg);
  const bool free_t = cfg.free.find('t') != std::string::npos;
  const bool free_ins = cfg.free.find("ins") != std::string::npos;
  if (!free_t && !free_ins) throw InvalidParameter("--free must name t, ins or both");
  Output out(cfg.out);
  json doc;
  doc["version"] = SZILARD_VERSION;
  doc["config"] = cfg.to_json();
  bool converged = true;

  auto insertion_record = [&](const EngineParams& p) {
    const auto medium = ctx.factory->make(p);
    const auto r = optimize_insertion(*medium);
    json j;
    j["t"] = temperature_in_e1(p.temperature);
    j["ins"] = r.insertion;
    j["ratio"] = r.work.ratio;
    j["bifurcated"] = r.bifurcated;
    j["maxima"] = json::array();
    for (const auto& [x, f] : r.local_maxima) j["maxima"].push_back({{"ins", x}, {"ratio", f}});
    j["p"] = r.work.probabilities;
    j["removals"] = r.plan.removals;
    const auto c = medium->convergence();
    j["converged"] = c.converged;
    j["delta_log_z"] = c.delta_log_z;
    converged = converged && c.converged;
    return j;
  };

  if (free_t) {
    EngineParams p = ctx.params();
    PeakOptions po;
    po.insertion = cfg.ins;
    const PeakResult peak = find_peak(*ctx.factory, p, po);
    json j;
    j["t"] = temperature_in_e1(peak.temperature);
    j["ratio"] = peak.ratio;
    j["ins"] = cfg.ins;
    j["p"] = peak.work.probabilities;
    j["removals"] = peak.plan.removals;
    j["bracketed"] = peak.bracketed;
    j["converged"] = peak.convergence.converged;
    j["delta_log_z"] = peak.convergence.delta_log_z;
    converged = converged && peak.convergence.converged;
    doc["peak"] = j;
    if (free_ins) {
      p.temperature = peak.temperature;
      doc["insertion"] = insertion_record(p);
    }
  } else if (!cfg.t_range.empty()) {
    doc["insertion"] = json::array();
    std::optional<double> onset;
    for (double t : Range::parse(cfg.t_range).values()) {
      EngineParams p = ctx.params();
      p.temperature = temperature_from_e1(t);
      auto rec = insertion_record(p);
      if (!onset && rec["bifurcated"].get<bool>()) onset = t;
      doc["insertion"].push_back(rec);
    }
    doc["bifurcation_onset_t"] = onset ? json(*onset) : json(nullptr);
  } else {
    doc["insertion"] = insertion_record(ctx.params());
  }

  if (cfg.format == "json") {
    out.os() << doc.dump(2) << '\n';
  } else {
    write_header(out.os(), cfg);
    out.os() << "t,ins,ratio,bifurcated,converged\n";
    auto row = [&](const json& j) {
      out.os() << fmt(j["t"].get<double>()) << ',' << fmt(j["ins"].get<double>()) << ','
               << fmt(j["ratio"].get<double>()) << ','
               << (j.contains("bifurcated") && j["bifurcated"].get<bool>() ? 1 : 0) << ','
               << (j["converged"].get<bool>() ? 1 : 0) << '\n';
    };
    if (doc.contains("peak")) row(doc["peak"]);
    if (doc.contains("insertion")) {
      if (doc["insertion"].is_array()) {
        for (const auto& j : doc["insertion"]) row(j);
      } else {
        row(doc["insertion"]);
      }
    }
  }
  ctx.report_stats();
  if (!converged) {
    std::cerr << "error: basis not converged at some evaluated points\n";
    return kExitUnconverged;
  }
  return kExitOk;
}

int cmd_cache(const RunConfig& cfg) {
  const auto dir = cache_directory(cfg);
  if (!dir) {
    throw InvalidParameter(std::string("no cache directory: set ") + SpectrumStore::kEnvVar +
                           " or pass --cache-dir");
  }
  Output out(cfg.out);
  if (cfg.cache_action == "inspect") {
    SpectrumStore store(*dir);
    out.os() << "# store " << store.file().string() << '\n';
    out.os() << "entries=" << store.size() << '\n';
    if (store.size() > 0) out.os() << "n,g_eff,modes,e_cut_e1,levels,complete_below\n";
    for (const auto& r : store.records()) {
      out.os() << r.key.n << ',' << fmt(r.key.g_eff) << ',' << r.key.basis_size << ','
               << fmt(r.key.energy_cutoff / kE1) << ',' << r.energies.size() << ','
               << fmt(r.complete_below) << '\n';
    }
    return kExitOk;
  }
  if (cfg.cache_action == "clear") {
    SpectrumStore store(*dir);
    const auto before = store.size();
    store.clear();
    out.os() << "cleared=" << before << '\n';
    return kExitOk;
  }
  if (cfg.cache_action == "prewarm") {
    RunConfig c = cfg;
    c.cache_dir = dir->string();
    Context ctx(c);
    if (ctx.baseline != Baseline::kExact) throw InvalidParameter("prewarm needs the exact baseline");
    if (c.t_range.empty() && c.g_range.empty() && c.ins_range.empty()) {
      ScanOptions opts;
      opts.axis = ScanAxis::kInsertion;
      opts.values = {c.ins};
      scan(*ctx.factory, ctx.params(), opts);
    } else {
      run_scan(ctx);
    }
    out.os() << "entries=" << ctx.store->size() << '\n';
    ctx.report_stats();
    return kExitOk;
  }
  throw InvalidParameter("cache action must be inspect, clear or prewarm");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Quasi-static Szilard engine with interacting bosons"};
  app.set_version_flag("--version", std::string(SZILARD_VERSION));
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--n", cfg.n, "particle number N");
  app.add_option("--g", cfg.g, "coupling g/g0");
  app.add_option("--t", cfg.t, "temperature k_BT/E1");
  app.add_option("--t-range", cfg.t_range, "temperature sweep lo:hi:count[:log] in E1");
  app.add_option("--g-range", cfg.g_range, "coupling sweep lo:hi:count[:log]");
  app.add_option("--ins", cfg.ins, "insertion position");
  app.add_option("--ins-range", cfg.ins_range, "insertion sweep lo:hi:count");
  app.add_option("--modes", cfg.modes, "cap on single-particle modes (0: automatic)");
  app.add_option("--e-cut", cfg.e_cut, "fixed unit-box energy cutoff in E1 (0: automatic)");
  app.add_option("--tol", cfg.tol, "basis convergence tolerance on |delta ln Z|");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--baseline", cfg.baseline, "exact, ideal-bose, ideal-fermi, perturbative, classical")
      ->check(CLI::IsMember({"exact", "ideal-bose", "ideal-fermi", "perturbative", "classical"}));
  app.add_option("--cache-dir", cfg.cache_dir,
                 std::string("spectrum store directory (default $") + SpectrumStore::kEnvVar + ")");
  app.add_option("--threads", cfg.threads, "worker threads for scans");

  auto* work = app.add_subcommand("work", "work breakdown for one (N, g, T, ins)");
  auto* scan_cmd = app.add_subcommand("scan", "sweep temperature, coupling or insertion");
  auto* optimize = app.add_subcommand("optimize", "maximize the work over T and/or ins");
  optimize->add_option("--free", cfg.free, "free variables: t, ins or t,ins");
  auto* cache = app.add_subcommand("cache", "inspect, clear or prewarm the spectrum store");
  cache->add_option("action", cfg.cache_action, "inspect | clear | prewarm")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*work) {
      cfg.command = "work";
      return cmd_work(cfg);
    }
    if (*scan_cmd) {
      cfg.command = "scan";
      return cmd_scan(cfg);
    }
    if (*optimize) {
      cfg.command = "optimize";
      return cmd_optimize(cfg);
    }
    cfg.command = "cache";
    return cmd_cache(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
