#include "upcint/runner.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "upcint/errors.hpp"
#include "upcint/event_io.hpp"

namespace upcint {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

json run_header(const RunConfig& cfg, const ResolvedRun& run, const std::string& subcommand) {
  return {{"tool", "upcint"},
          {"version", kToolVersion},
          {"config_hash", cfg.hash()},
          {"subcommand", subcommand},
          {"meson", run.model.meson().name},
          {"nucleus", run.beam.nucleus.name},
          {"sqrt_s_nn_gev", run.beam.sqrt_s_nn_gev},
          {"gamma", run.model.gamma()}};
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

json spectrum_json(const SpectrumTable& t, const BWindow& w, double y, const DecoherenceModel& d) {
  return {{"rapidity", y},
          {"decoherence", {{"model", d.name()}, {"eta", d.fixed_eta}}},
          {"grid",
           {{"pt_min_mev", t.edges.front()},
            {"pt_max_mev", t.edges.back()},
            {"n_bins", t.pt.size()}}},
          {"b_window_fm", {w.b_min, w.b_max}},
          {"convention", t.convention},
          {"fig2_normalized", t.fig2_normalized},
          {"normalization", t.normalization},
          {"max_rel_error", t.max_rel_error},
          {"columns", {"pt_mev", "rate_interf", "rate_no_interf", "ratio"}}};
}

}  // namespace

fs::path resolve_out_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("UPCINT_OUT_DIR"); env && *env) return env;
  return "out";
}

std::string provenance_comment(const RunConfig& cfg) {
  return fmt::format("# upcint {} config_hash={}", kToolVersion, cfg.hash());
}

void write_spectrum_csv(std::ostream& out, const SpectrumTable& t, const RunConfig& cfg) {
  out << provenance_comment(cfg) << " convention=" << t.convention
      << " fig2_normalized=" << (t.fig2_normalized ? "true" : "false") << '\n';
  out << "pt_mev,rate_interf,rate_no_interf,ratio\n";
  for (std::size_t i = 0; i < t.pt.size(); ++i)
    out << fmt::format("{:.6f},{:.12e},{:.12e},{:.12e}\n", t.pt[i], t.rate_interf[i],
                       t.rate_no_interf[i], t.ratio[i]);
}

std::vector<fs::path> run_spectrum(const RunConfig& cfg, const RunContext& ctx) {
  const auto run = resolve(cfg);
  const BWindow window = resolve_b_window(run.model, run.rapidity);
  const SpectrumEngine engine(run.model, run.rapidity, window);
  const auto table = engine.pt_spectrum(run.grid, run.decoherence, run.normalize_fig2, ctx.threads);

  fs::create_directories(ctx.out_dir);
  const fs::path csv = ctx.out_dir / "spectrum.csv";
  const fs::path meta = ctx.out_dir / "spectrum.json";
  {
    auto out = open_out(csv);
    write_spectrum_csv(out, table, cfg);
  }
  auto j = run_header(cfg, run, "spectrum");
  j["spectrum"] = spectrum_json(table, window, run.rapidity, run.decoherence);
  write_json(meta, j);
  return {csv, meta};
}

std::vector<fs::path> run_events(const RunConfig& cfg, const RunContext& ctx) {
  const auto run = resolve(cfg);
  const EventGenerator gen(run.model, run.generator);
  const auto events = gen.generate_all(ctx.threads);

  auto j = run_header(cfg, run, "events");
  const auto& g = run.generator;
  j["generator"] = {{"seed", g.seed},
                    {"n_events", g.n_events},
                    {"decoherence", g.decoherence.name()},
                    {"eta", g.decoherence.fixed_eta},
                    {"y_window", {g.y_min, g.y_max}},
                    {"pt_window_mev", {g.pt_min, g.pt_max}},
                    {"b_window_fm", {gen.window().b_min, gen.window().b_max}},
                    {"channel", g.channel},
                    {"pilot_acceptance", gen.stats().pilot_acceptance},
                    {"format", run.events_format}};

  fs::create_directories(ctx.out_dir);
  const fs::path data = ctx.out_dir / (run.events_format == "csv" ? "events.csv" : "events.ndjson");
  const fs::path meta = ctx.out_dir / "events.json";
  {
    auto out = open_out(data);
    if (run.events_format == "csv") {
      out << provenance_comment(cfg) << " seed=" << g.seed << '\n';
      write_events_csv(out, events);
    } else {
      out << json{{"meta", {{"tool", "upcint"}, {"version", kToolVersion},
                            {"config_hash", cfg.hash()}, {"seed", g.seed}}}}.dump()
          << '\n';
      write_events_ndjson(out, events);
    }
  }
  write_json(meta, j);
  return {data, meta};
}

std::vector<fs::path> run_gedanken(const RunConfig& cfg, const RunContext& ctx) {
  const auto run = resolve(cfg);
  if (!run.detector)
    throw ConfigError(cfg.source(), 0, "detector.radius_fm",
                      "gedanken needs a detector layout (detector.* keys)");
  const DetectorLayout& layout = *run.detector;
  ProtocolOptions opt = run.gedanken;
  opt.threads = ctx.threads;

  std::vector<ProtocolReport> reports;
  if (!run.gedanken_events_path.empty()) {
    std::ifstream in(run.gedanken_events_path);
    if (!in) throw ConfigError(cfg.source(), cfg.entry("gedanken.events_path").line,
                               "gedanken.events_path", "cannot open event file");
    const auto events = read_events_ndjson(in);
    const double y_edge = std::max(std::abs(run.generator.y_min), std::abs(run.generator.y_max));
    auto report = analyze_protocol(events, run.model, run.generator,
                                   resolve_b_window(run.model, y_edge), layout, opt);
    report.scenario = "events_file";
    reports.push_back(std::move(report));
  } else {
    std::vector<CollapseScenario> scenarios;
    if (run.gedanken_scenario == "both")
      scenarios = {CollapseScenario::AtMeasurement, CollapseScenario::AtDecay};
    else
      scenarios = {parse_scenario(run.gedanken_scenario)};
    for (auto s : scenarios) {
      opt.scenario = s;
      reports.push_back(dual_detector_protocol(run.model, run.generator, layout, opt));
    }
  }

  auto j = run_header(cfg, run, "gedanken");
  j["reports"] = json::array();
  std::string text = provenance_comment(cfg) + "\n";
  for (const auto& r : reports) {
    j["reports"].push_back(r.to_json());
    text += r.to_text();
  }
  if (reports.size() == 2) {
    const double sep = dip_separation(reports[0].dip, reports[1].dip);
    j["dip_separation_sigma"] = sep;
    text += fmt::format("dip separation (measurement vs decay): {:.2f} sigma\n", sep);
  }

  fs::create_directories(ctx.out_dir);
  const fs::path jpath = ctx.out_dir / "gedanken.json";
  const fs::path tpath = ctx.out_dir / "gedanken.txt";
  write_json(jpath, j);
  {
    auto out = open_out(tpath);
    out << text;
  }
  return {jpath, tpath};
}

std::vector<fs::path> run_scan(const RunConfig& cfg, const RunContext& ctx) {
  const auto run = resolve(cfg);
  if (run.scan_points.empty())
    throw ConfigError(cfg.source(), cfg.entry("scan.parameter").line, "scan.parameter",
                      "scan needs scan.parameter and scan.values");
  fs::create_directories(ctx.out_dir);
  std::vector<fs::path> written;
  auto j = run_header(cfg, run, "scan");
  j["parameter"] = run.scan_parameter;
  j["points"] = json::array();
  std::string summary = provenance_comment(cfg) + "\npoint,parameter,value,dip_depth,b_min_fm,b_max_fm\n";
  for (std::size_t i = 0; i < run.scan_points.size(); ++i) {
    const auto& p = run.scan_points[i];
    BWindow window = resolve_b_window(run.model, p.rapidity);
    if (p.b_min > 0.0) window.b_min = p.b_min;
    if (p.b_max > 0.0) window.b_max = p.b_max;
    const SpectrumEngine engine(run.model, p.rapidity, window);
    const auto table = engine.pt_spectrum(run.grid, p.decoherence, run.normalize_fig2, ctx.threads);
    const double dip = engine.dip_depth(p.decoherence);

    const fs::path csv = ctx.out_dir / fmt::format("scan_{:03d}.csv", i);
    {
      auto out = open_out(csv);
      write_spectrum_csv(out, table, cfg);
    }
    written.push_back(csv);
    summary += fmt::format("{},{},{},{:.12e},{},{}\n", i, run.scan_parameter, p.label, dip,
                           window.b_min, window.b_max);
    auto pj = spectrum_json(table, window, p.rapidity, p.decoherence);
    pj["label"] = p.label;
    pj["dip_depth"] = dip;
    pj["file"] = csv.filename().string();
    j["points"].push_back(pj);
  }
  const fs::path sum = ctx.out_dir / "scan_summary.csv";
  {
    auto out = open_out(sum);
    out << summary;
  }
  const fs::path meta = ctx.out_dir / "scan.json";
  write_json(meta, j);
  written.push_back(sum);
  written.push_back(meta);
  return written;
}

}  // namespace upcint
