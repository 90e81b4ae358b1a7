#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "upcint/catalog.hpp"
#include "upcint/event_generator.hpp"
#include "upcint/gedanken.hpp"
#include "upcint/keyvalue.hpp"
#include "upcint/spectrum.hpp"

namespace upcint {

inline constexpr const char* kToolVersion = "0.1.0";

struct ConfigKey {
  std::string key;
  std::string default_value;  // "" with a description of the fallback where it is derived
  std::string description;
};

/// Every recognized key with its default.
const std::vector<ConfigKey>& config_keys();

/// Flat dotted-key run configuration. Unknown keys are rejected with their line.
class RunConfig {
 public:
  static RunConfig parse(std::istream& in, const std::string& source = "<config>");
  static RunConfig load(const std::filesystem::path& path);

  /// Override from the command line (recorded with line 0).
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  /// Explicit value or documented default.
  std::string get(const std::string& key) const;
  double get_double(const std::string& key) const;
  long long get_integer(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  /// Entry for diagnostics (line 0 when defaulted or overridden).
  KeyValueEntry entry(const std::string& key) const;
  const std::string& source() const { return source_; }

  /// Sorted "key = value" lines for every key, defaults included.
  std::string canonical() const;
  /// FNV-1a 64 of canonical(), as 16 hex digits.
  std::string hash() const;

 private:
  std::map<std::string, KeyValueEntry> values_;
  std::string source_ = "<defaults>";
};

enum class ScanParameter { Eta, BWindow, Rapidity, Model };

struct ScanPoint {
  std::string label;
  double rapidity = 0.0;
  DecoherenceModel decoherence;
  double b_min = 0.0, b_max = 0.0;  // <= 0: from the beam
};

/// Everything a run needs, built and validated from a RunConfig.
struct ResolvedRun {
  Catalog catalog;
  BeamConfig beam;
  PhotoproductionModel model;
  double rapidity = 0.0;
  DecoherenceModel decoherence{};
  PtGrid grid{};
  bool normalize_fig2 = false;
  GeneratorConfig generator{};
  std::string events_format = "ndjson";
  std::optional<DetectorLayout> detector{};
  ProtocolOptions gedanken{};
  std::string gedanken_scenario = "both";
  std::string gedanken_events_path{};
  std::string scan_parameter{};
  std::vector<ScanPoint> scan_points{};
};

/// Throws ConfigError naming the offending key (and line when it came from a file).
ResolvedRun resolve(const RunConfig& config);

}  // namespace upcint
