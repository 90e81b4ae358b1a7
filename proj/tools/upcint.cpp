// upcint: spectra, events and gedanken analyses for two-source vector-meson
// interference in ultra-peripheral collisions.
//
// Exit codes: 0 success, 1 unexpected failure, 2 configuration error,
// 3 quadrature non-convergence, 4 sampling failure.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "upcint/errors.hpp"
#include "upcint/runner.hpp"

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kNonConvergence = 3, kSampling = 4 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-source vector-meson interference in ultra-peripheral collisions"};
  app.set_version_flag("--version", upcint::kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::optional<unsigned long long> seed;
  unsigned threads = 1;
  std::optional<std::string> out_dir;
  bool normalize_fig2 = false;

  app.add_option("--config", config_path, "run configuration file (dotted key = value)");
  app.add_option("--seed", seed, "override generator.seed");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory (default $UPCINT_OUT_DIR or ./out)");
  app.add_flag("--normalize-fig2", normalize_fig2,
               "normalize rates to the no-interference value at pT = 0");

  auto* spectrum = app.add_subcommand("spectrum", "pT spectrum with and without interference");
  auto* events = app.add_subcommand("events", "Monte Carlo event stream");
  auto* gedanken = app.add_subcommand("gedanken", "pointing and dual-detector protocol report");
  auto* scan = app.add_subcommand("scan", "spectra and dip depth over a parameter scan");
  for (auto* sub : {spectrum, events, gedanken, scan}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    upcint::RunConfig cfg = config_path.empty() ? upcint::RunConfig{}
                                                : upcint::RunConfig::load(config_path);
    if (seed) cfg.set("generator.seed", std::to_string(*seed));
    if (normalize_fig2) cfg.set("spectrum.normalize_fig2", "true");
    const upcint::RunContext ctx{upcint::resolve_out_dir(out_dir), threads};

    std::vector<std::filesystem::path> files;
    if (*spectrum) files = upcint::run_spectrum(cfg, ctx);
    else if (*events) files = upcint::run_events(cfg, ctx);
    else if (*gedanken) files = upcint::run_gedanken(cfg, ctx);
    else files = upcint::run_scan(cfg, ctx);
    for (const auto& f : files) std::cout << f.string() << '\n';
    return kOk;
  } catch (const upcint::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const upcint::NonConvergence& e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const upcint::SamplingFailure& e) {
    std::cerr << "sampling failure: " << e.what() << '\n';
    return kSampling;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
