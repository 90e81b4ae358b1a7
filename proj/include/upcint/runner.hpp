#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "upcint/run_config.hpp"

namespace upcint {

struct RunContext {
  std::filesystem::path out_dir = "out";
  unsigned threads = 1;
};

/// --out flag, else $UPCINT_OUT_DIR, else ./out.
std::filesystem::path resolve_out_dir(const std::optional<std::string>& flag);

/// First line of every CSV output: "# upcint <version> config_hash=<hash> ...".
std::string provenance_comment(const RunConfig& config);

void write_spectrum_csv(std::ostream& out, const SpectrumTable& table, const RunConfig& config);

/// Each returns the files it wrote. Errors propagate as ConfigError,
/// NonConvergence or SamplingFailure.
std::vector<std::filesystem::path> run_spectrum(const RunConfig& config, const RunContext& ctx);
std::vector<std::filesystem::path> run_events(const RunConfig& config, const RunContext& ctx);
std::vector<std::filesystem::path> run_gedanken(const RunConfig& config, const RunContext& ctx);
std::vector<std::filesystem::path> run_scan(const RunConfig& config, const RunContext& ctx);

}  // namespace upcint
