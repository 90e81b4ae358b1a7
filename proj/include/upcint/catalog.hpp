#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>

#include "upcint/constants.hpp"

namespace upcint {

/// Immutable set of nuclei and mesons loaded from a flat key-value file.
///
/// One record per blank-line separated block:
///
///     kind = meson
///     name = rho0
///     mass_mev = 775.26
///     lifetime_s = 4e-24
///     channel = pipi:0.9988:139.57039,139.57039
///
/// Nucleus blocks use `kind = nucleus` with Z, A, radius_fm and optional
/// yukawa_fm, ws_radius_fm, ws_diffuseness_fm. Meson blocks may carry the
/// default gamma-proton cross-section constants under the same `sigma.*`
/// keys as the run configuration.
class Catalog {
 public:
  static Catalog parse(std::istream& in, const std::string& source = "<catalog>");
  static Catalog load(const std::filesystem::path& path);
  /// Catalog shipped in the data directory.
  static Catalog load_default();

  const MesonSpec& meson(const std::string& name) const;
  const NucleusSpec& nucleus(const std::string& name) const;
  const std::map<std::string, MesonSpec>& mesons() const { return mesons_; }
  const std::map<std::string, NucleusSpec>& nuclei() const { return nuclei_; }

 private:
  std::map<std::string, MesonSpec> mesons_;
  std::map<std::string, NucleusSpec> nuclei_;
};

std::filesystem::path default_data_dir();

}  // namespace upcint
