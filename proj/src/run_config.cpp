#include "upcint/run_config.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "upcint/errors.hpp"

namespace upcint {
namespace {

const std::map<std::string, const ConfigKey*>& key_index() {
  static const auto index = [] {
    std::map<std::string, const ConfigKey*> m;
    for (const auto& k : config_keys()) m[k.key] = &k;
    return m;
  }();
  return index;
}

std::vector<std::string> list_values(const std::string& s) {
  std::vector<std::string> out;
  for (auto& v : split(s, ','))
    if (!v.empty()) out.push_back(v);
  return out;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"beam.nucleus", "Au", "catalog nucleus for both beams"},
      {"beam.sqrt_s_nn_gev", "200", "collision energy per nucleon pair, GeV"},
      {"beam.hadronic_exclusion", "true", "require b > 2 R_A"},
      {"beam.b_min_fm", "0", "lower b cut, fm; 0: 2 R_A (0.1 fm without exclusion)"},
      {"beam.b_max_fm", "0", "upper b cut, fm; 0: max(10 median, 5 gamma hbar c / k_min)"},
      {"meson", "rho0", "catalog meson"},
      {"catalog.path", "", "catalog file; empty: shipped data/catalog.txt"},
      {"rapidity", "0", "meson rapidity of the spectrum slice"},
      {"decoherence.model", "full_coherence",
       "full_coherence | full_decoherence | fixed | survival_light_speed | survival_meson_velocity"},
      {"decoherence.eta", "0", "eta for decoherence.model = fixed"},
      {"sigma.pomeron_norm", "", "X in mb; empty: catalog value"},
      {"sigma.pomeron_eps", "", "epsilon; empty: catalog value"},
      {"sigma.meson_norm", "", "Y in mb; empty: catalog value"},
      {"sigma.meson_eta", "", "eta_R; empty: catalog value"},
      {"sigma.a_power", "1.3333333333333333", "exponent of A in sigma_gA"},
      {"sigma.coherence", "true", "multiply sigma_gA by |F(q_L)|^2, q_L = M^2 / (4 k gamma)"},
      {"formfactor.model", "hard_sphere_yukawa", "hard_sphere_yukawa | woods_saxon"},
      {"phase.delta_rad", "0", "constant phase of c"},
      {"grid.pt_min_mev", "0", "spectrum grid lower edge"},
      {"grid.pt_max_mev", "150", "spectrum grid upper edge"},
      {"grid.n_bins", "150", "spectrum bins"},
      {"spectrum.normalize_fig2", "false", "divide rates by the no-interference rate at pT = 0"},
      {"generator.seed", "1", "64-bit seed"},
      {"generator.n_events", "1000", "events for the events subcommand"},
      {"generator.y_min", "", "rapidity window; empty: rapidity"},
      {"generator.y_max", "", "rapidity window; empty: rapidity"},
      {"generator.pt_min_mev", "0", "pT window"},
      {"generator.pt_max_mev", "300", "pT window"},
      {"generator.b_min_fm", "0", "b window; 0: from the beam"},
      {"generator.b_max_fm", "0", "b window; 0: resolved from the flux cutoff"},
      {"generator.channel", "", "decay channel id; empty: all listed channels"},
      {"events.format", "ndjson", "ndjson | csv"},
      {"detector.radius_fm", "", "cylinder radius L, fm; required by gedanken"},
      {"detector.position_resolution_fm", "0", "hit position resolution, fm"},
      {"detector.time_resolution_s", "1e-12", "hit time resolution, s"},
      {"detector.max_abs_z_fm", "0", "half length of the cylinder, fm; 0: unbounded"},
      {"gedanken.scenario", "both", "collapse_at_measurement | collapse_at_decay | both"},
      {"gedanken.n_events", "100000", "events per scenario"},
      {"gedanken.pt_dip_mev", "0", "dip window; 0: 3 hbar c / median b"},
      {"gedanken.events_path", "", "analyze this NDJSON file instead of generating"},
      {"gedanken.perpendicular_cosine", "0.25", "|cos(chord, b)| cut for the pointing offset"},
      {"scan.parameter", "", "eta | b_window | y | model"},
      {"scan.values", "", "comma-separated scan points; b_window points are lo:hi"},
  };
  return keys;
}

RunConfig RunConfig::parse(std::istream& in, const std::string& source) {
  RunConfig cfg;
  cfg.source_ = source;
  for (const auto& block : parse_key_value_blocks(in, source)) {
    for (const auto& e : block) {
      if (!key_index().count(e.key)) throw ConfigError(source, e.line, e.key, "unknown key");
      if (cfg.values_.count(e.key))
        throw ConfigError(source, e.line, e.key,
                          fmt::format("duplicate key (first set on line {})", cfg.values_[e.key].line));
      cfg.values_[e.key] = e;
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse(in, path.string());
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!key_index().count(key)) throw ConfigError("<command line>", 0, key, "unknown key");
  values_[key] = {key, value, 0};
}

std::string RunConfig::get(const std::string& key) const {
  if (auto it = values_.find(key); it != values_.end()) return it->second.value;
  const auto it = key_index().find(key);
  if (it == key_index().end()) throw ConfigError("<internal>", 0, key, "unknown key");
  return it->second->default_value;
}

KeyValueEntry RunConfig::entry(const std::string& key) const {
  if (auto it = values_.find(key); it != values_.end()) return it->second;
  return {key, get(key), 0};
}

double RunConfig::get_double(const std::string& key) const { return parse_double(entry(key), source_); }
long long RunConfig::get_integer(const std::string& key) const {
  return parse_integer(entry(key), source_);
}
bool RunConfig::get_bool(const std::string& key) const { return parse_bool(entry(key), source_); }

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& [key, _] : key_index()) out += key + " = " + get(key) + "\n";
  return out;
}

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return fmt::format("{:016x}", h);
}

ResolvedRun resolve(const RunConfig& cfg) {
  const std::string& src = cfg.source();
  auto fail = [&](const std::string& key, const std::string& what) -> ConfigError {
    return ConfigError(src, cfg.entry(key).line, key, what);
  };
  // Converts domain validation failures into diagnostics against `key`.
  auto guarded = [&](const std::string& key, auto&& fn) {
    try {
      return fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw fail(key, e.what());
    } catch (const std::domain_error& e) {
      throw fail(key, e.what());
    }
  };

  const std::string catalog_path = cfg.get("catalog.path");
  Catalog catalog = catalog_path.empty() ? Catalog::load_default() : Catalog::load(catalog_path);

  const std::string nucleus_name = cfg.get("beam.nucleus");
  if (!catalog.nuclei().count(nucleus_name)) throw fail("beam.nucleus", "not in catalog");
  const std::string meson_name = cfg.get("meson");
  if (!catalog.mesons().count(meson_name)) throw fail("meson", "not in catalog");

  BeamConfig beam = guarded("beam.sqrt_s_nn_gev", [&] {
    return make_beam(catalog.nucleus(nucleus_name), cfg.get_double("beam.sqrt_s_nn_gev"),
                     cfg.get_bool("beam.hadronic_exclusion"));
  });
  beam.b_min_fm = cfg.get_double("beam.b_min_fm");
  beam.b_max_fm = cfg.get_double("beam.b_max_fm");
  guarded("beam.b_min_fm", [&] { beam.validate(); return 0; });

  MesonSpec meson = catalog.meson(meson_name);
  GammaACrossSection xs{meson.sigma};
  if (!cfg.get("sigma.pomeron_norm").empty()) xs.params.pomeron_norm_mb = cfg.get_double("sigma.pomeron_norm");
  if (!cfg.get("sigma.pomeron_eps").empty()) xs.params.pomeron_eps = cfg.get_double("sigma.pomeron_eps");
  if (!cfg.get("sigma.meson_norm").empty()) xs.params.meson_norm_mb = cfg.get_double("sigma.meson_norm");
  if (!cfg.get("sigma.meson_eta").empty()) xs.params.meson_eta = cfg.get_double("sigma.meson_eta");
  if (!(xs.params.pomeron_norm_mb > 0.0) || xs.params.meson_norm_mb < 0.0)
    throw fail("sigma.pomeron_norm", "cross-section normalizations must keep sigma > 0");
  xs.a_power = cfg.get_double("sigma.a_power");
  xs.coherence = cfg.get_bool("sigma.coherence");
  xs.phase_delta_rad = cfg.get_double("phase.delta_rad");

  const std::string ff_name = cfg.get("formfactor.model");
  FormFactorKind ff_kind;
  if (ff_name == "hard_sphere_yukawa") ff_kind = FormFactorKind::HardSphereYukawa;
  else if (ff_name == "woods_saxon") ff_kind = FormFactorKind::WoodsSaxon;
  else throw fail("formfactor.model", "expected hard_sphere_yukawa or woods_saxon");

  ResolvedRun run{
      .catalog = catalog,
      .beam = beam,
      .model = guarded("beam.nucleus", [&] {
        return PhotoproductionModel(beam, meson, xs, FormFactorModel::for_nucleus(beam.nucleus, ff_kind));
      }),
  };

  run.rapidity = cfg.get_double("rapidity");
  run.decoherence = guarded("decoherence.model", [&] {
    return DecoherenceModel::parse(cfg.get("decoherence.model"), cfg.get_double("decoherence.eta"));
  });

  run.grid = {cfg.get_double("grid.pt_min_mev"), cfg.get_double("grid.pt_max_mev"),
              static_cast<int>(cfg.get_integer("grid.n_bins"))};
  guarded("grid.n_bins", [&] { run.grid.validate(); return 0; });
  run.normalize_fig2 = cfg.get_bool("spectrum.normalize_fig2");

  auto& g = run.generator;
  const long long seed = cfg.get_integer("generator.seed");
  if (seed < 0) throw fail("generator.seed", "must be >= 0");
  g.seed = static_cast<std::uint64_t>(seed);
  const long long n = cfg.get_integer("generator.n_events");
  if (n < 0) throw fail("generator.n_events", "must be >= 0");
  g.n_events = static_cast<std::size_t>(n);
  g.decoherence = run.decoherence;
  g.y_min = cfg.get("generator.y_min").empty() ? run.rapidity : cfg.get_double("generator.y_min");
  g.y_max = cfg.get("generator.y_max").empty() ? run.rapidity : cfg.get_double("generator.y_max");
  g.pt_min = cfg.get_double("generator.pt_min_mev");
  g.pt_max = cfg.get_double("generator.pt_max_mev");
  g.b_min = cfg.get_double("generator.b_min_fm");
  g.b_max = cfg.get_double("generator.b_max_fm");
  g.channel = cfg.get("generator.channel");
  if (!g.channel.empty())
    guarded("generator.channel", [&] { return meson.channel(g.channel).fraction; });
  guarded("generator.y_min", [&] { g.validate(); return 0; });

  run.events_format = cfg.get("events.format");
  if (run.events_format != "ndjson" && run.events_format != "csv")
    throw fail("events.format", "expected ndjson or csv");

  if (!cfg.get("detector.radius_fm").empty()) {
    DetectorLayout d;
    d.radius_fm = cfg.get_double("detector.radius_fm");
    d.position_resolution_fm = cfg.get_double("detector.position_resolution_fm");
    d.time_resolution_s = cfg.get_double("detector.time_resolution_s");
    d.max_abs_z_fm = cfg.get_double("detector.max_abs_z_fm");
    guarded("detector.radius_fm", [&] { d.validate(); return 0; });
    run.detector = d;
  }

  run.gedanken_scenario = cfg.get("gedanken.scenario");
  if (run.gedanken_scenario != "both")
    guarded("gedanken.scenario", [&] { return parse_scenario(run.gedanken_scenario); });
  const long long gn = cfg.get_integer("gedanken.n_events");
  if (gn < 1000) throw fail("gedanken.n_events", "must be >= 1000");
  run.gedanken.n_events = static_cast<std::size_t>(gn);
  run.gedanken.pt_dip_mev = cfg.get_double("gedanken.pt_dip_mev");
  run.gedanken.perpendicular_cosine = cfg.get_double("gedanken.perpendicular_cosine");
  run.gedanken_events_path = cfg.get("gedanken.events_path");

  run.scan_parameter = cfg.get("scan.parameter");
  const auto values = list_values(cfg.get("scan.values"));
  if (!run.scan_parameter.empty() && values.empty()) throw fail("scan.values", "no scan points");
  for (const auto& v : values) {
    ScanPoint p;
    p.label = v;
    p.rapidity = run.rapidity;
    p.decoherence = run.decoherence;
    const KeyValueEntry as_entry{"scan.values", v, cfg.entry("scan.values").line};
    if (run.scan_parameter == "eta") {
      p.decoherence = guarded("scan.values", [&] { return DecoherenceModel::fixed(parse_double(as_entry, src)); });
    } else if (run.scan_parameter == "y") {
      p.rapidity = parse_double(as_entry, src);
    } else if (run.scan_parameter == "model") {
      p.decoherence = guarded("scan.values", [&] { return DecoherenceModel::parse(v, cfg.get_double("decoherence.eta")); });
    } else if (run.scan_parameter == "b_window") {
      const auto lohi = split(v, ':');
      if (lohi.size() != 2) throw fail("scan.values", "b_window points must be lo:hi");
      p.b_min = parse_double({"scan.values", lohi[0], as_entry.line}, src);
      p.b_max = parse_double({"scan.values", lohi[1], as_entry.line}, src);
      if (p.b_min > 0.0 && p.b_max > 0.0 && !(p.b_max > p.b_min))
        throw fail("scan.values", "b_window point '" + v + "' is empty");
    } else {
      throw fail("scan.parameter", "expected eta, b_window, y or model");
    }
    run.scan_points.push_back(p);
  }
  return run;
}

}  // namespace upcint
