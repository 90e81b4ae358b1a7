#include "upcint/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "upcint/errors.hpp"
#include "upcint/keyvalue.hpp"

#ifndef UPCINT_DATA_DIR
#define UPCINT_DATA_DIR "data"
#endif

namespace upcint {
namespace {

DecayChannel parse_channel(const KeyValueEntry& e, const std::string& source) {
  const auto parts = split(e.value, ':');
  if (parts.size() != 3)
    throw ConfigError(source, e.line, e.key, "channel must be 'id:fraction:m1,m2[,m3]'");
  DecayChannel ch;
  ch.id = parts[0];
  if (ch.id.empty()) throw ConfigError(source, e.line, e.key, "channel id is empty");
  ch.fraction = parse_double({e.key, parts[1], e.line}, source);
  for (const auto& m : split(parts[2], ','))
    ch.product_masses.push_back(parse_double({e.key, m, e.line}, source));
  return ch;
}

const KeyValueEntry* find(const KeyValueBlock& block, std::string_view key) {
  for (const auto& e : block)
    if (e.key == key) return &e;
  return nullptr;
}

const KeyValueEntry& require(const KeyValueBlock& block, std::string_view key,
                             const std::string& source) {
  if (const auto* e = find(block, key)) return *e;
  throw ConfigError(source, block.front().line, std::string(key), "missing in record");
}

}  // namespace

Catalog Catalog::parse(std::istream& in, const std::string& source) {
  Catalog cat;
  for (const auto& block : parse_key_value_blocks(in, source)) {
    const auto& kind = require(block, "kind", source);
    const auto& name = require(block, "name", source).value;
    const int line = block.front().line;
    if (kind.value == "meson") {
      MesonSpec m;
      m.name = name;
      for (const auto& e : block) {
        if (e.key == "kind" || e.key == "name") continue;
        if (e.key == "mass_mev") m.mass_mev = parse_double(e, source);
        else if (e.key == "lifetime_s") m.lifetime_s = parse_double(e, source);
        else if (e.key == "channel") m.channels.push_back(parse_channel(e, source));
        else if (e.key == "sigma.pomeron_norm") m.sigma.pomeron_norm_mb = parse_double(e, source);
        else if (e.key == "sigma.pomeron_eps") m.sigma.pomeron_eps = parse_double(e, source);
        else if (e.key == "sigma.meson_norm") m.sigma.meson_norm_mb = parse_double(e, source);
        else if (e.key == "sigma.meson_eta") m.sigma.meson_eta = parse_double(e, source);
        else throw ConfigError(source, e.line, e.key, "unknown meson key");
      }
      try {
        m.validate();
      } catch (const std::invalid_argument& ex) {
        throw ConfigError(source, line, "name", ex.what());
      }
      cat.mesons_[name] = std::move(m);
    } else if (kind.value == "nucleus") {
      NucleusSpec n;
      n.name = name;
      for (const auto& e : block) {
        if (e.key == "kind" || e.key == "name") continue;
        if (e.key == "Z") n.Z = static_cast<int>(parse_integer(e, source));
        else if (e.key == "A") n.A = static_cast<int>(parse_integer(e, source));
        else if (e.key == "radius_fm") n.radius_fm = parse_double(e, source);
        else if (e.key == "yukawa_fm") n.yukawa_range_fm = parse_double(e, source);
        else if (e.key == "ws_radius_fm") n.ws_radius_fm = parse_double(e, source);
        else if (e.key == "ws_diffuseness_fm") n.ws_diffuseness_fm = parse_double(e, source);
        else throw ConfigError(source, e.line, e.key, "unknown nucleus key");
      }
      try {
        n.validate();
      } catch (const std::invalid_argument& ex) {
        throw ConfigError(source, line, "name", ex.what());
      }
      cat.nuclei_[name] = std::move(n);
    } else {
      throw ConfigError(source, kind.line, "kind", "expected 'meson' or 'nucleus'");
    }
  }
  return cat;
}

Catalog Catalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open catalog " + path.string());
  return parse(in, path.string());
}

Catalog Catalog::load_default() { return load(default_data_dir() / "catalog.txt"); }

const MesonSpec& Catalog::meson(const std::string& name) const {
  if (auto it = mesons_.find(name); it != mesons_.end()) return it->second;
  throw ConfigError("unknown meson '" + name + "'");
}

const NucleusSpec& Catalog::nucleus(const std::string& name) const {
  if (auto it = nuclei_.find(name); it != nuclei_.end()) return it->second;
  throw ConfigError("unknown nucleus '" + name + "'");
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("UPCINT_DATA_DIR"); env && *env) return env;
  return UPCINT_DATA_DIR;
}

}  // namespace upcint
