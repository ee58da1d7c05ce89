// volmodel — fit heavy-tailed volume-price models per time window, score
// them with generalized Kullback-Leibler distances and rank them.
//
// Subcommands:
//   fit     run the full pipeline on a snapshot CSV
//   synth   generate a seeded synthetic snapshot stream from a JSON spec
//   report  re-render the rank matrices of a completed run directory
//
// VOLMODEL_LOG=error|warn|info|debug controls stderr verbosity.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "volmodel/errors.hpp"
#include "volmodel/pipeline.hpp"
#include "volmodel/synth.hpp"
#include "volmodel/version.hpp"

namespace {

int run_fit_command(volmodel::RunConfig& config, const std::string& variant) {
  config.variant = volmodel::selection_from_name(variant);
  const volmodel::RunResult result = volmodel::run_fit(config);
  std::fputs(volmodel::summarize(result).c_str(), stdout);
  std::printf("artifacts written to %s\n", config.out_dir.c_str());
  return 0;
}

int run_synth_command(const std::string& input, const std::string& out_dir,
                      bool seed_given, std::uint64_t seed) {
  volmodel::SynthSpec spec = volmodel::load_synth_spec(input);
  if (seed_given) spec.seed = seed;
  const auto windows = volmodel::generate(spec);
  std::filesystem::create_directories(out_dir);
  const auto csv = std::filesystem::path(out_dir) / "snapshots.csv";
  volmodel::write_snapshot_csv(csv, windows);
  volmodel::write_manifest(std::filesystem::path(out_dir) / "manifest.json", spec);
  std::size_t total = 0;
  for (const auto& w : windows) total += w.samples.size();
  std::printf("wrote %zu windows (%zu samples) to %s\n", windows.size(), total,
              csv.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"windowed volume-price model fitting and ranking"};
  app.set_version_flag("--version", std::string(volmodel::kToolVersion));
  app.require_subcommand(1);

  volmodel::RunConfig config;
  std::string variant = "both";
  auto* fit = app.add_subcommand("fit", "fit models to a snapshot CSV");
  fit->add_option("--input", config.input, "snapshot CSV (.gz accepted)")
      ->required();
  fit->add_option("--out", config.out_dir, "output directory")->required();
  fit->add_option("--window-minutes", config.window_minutes, "window length")
      ->check(CLI::PositiveNumber);
  fit->add_option("--bins-per-decade", config.bins_per_decade,
                  "histogram bins per decade")
      ->check(CLI::Range(2, 1000000));
  fit->add_option("--min-samples", config.min_samples,
                  "minimum samples per window");
  fit->add_option("--variant", variant, "standard|tail|both")
      ->check(CLI::IsMember({"standard", "tail", "both"}));
  fit->add_option("--jobs", config.jobs, "worker threads (0 = all cores)");
  fit->add_option("--seed", config.seed, "seed for fit restarts");

  std::string synth_input, synth_out;
  std::uint64_t synth_seed = 0;
  auto* synth = app.add_subcommand("synth", "generate a synthetic stream");
  synth->add_option("--input", synth_input, "synth spec JSON")->required();
  synth->add_option("--out", synth_out, "output directory")->required();
  auto* seed_opt = synth->add_option("--seed", synth_seed,
                                     "override the spec file seed");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "summarize a run directory");
  report->add_option("--input", report_dir, "run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) return run_fit_command(config, variant);
    if (synth->parsed())
      return run_synth_command(synth_input, synth_out, seed_opt->count() > 0,
                               synth_seed);
    if (report->parsed()) {
      std::fputs(volmodel::report_from_dir(report_dir).c_str(), stdout);
      return 0;
    }
  } catch (const volmodel::EmptyResultError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
