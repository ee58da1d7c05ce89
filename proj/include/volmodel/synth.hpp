#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "volmodel/distributions.hpp"
#include "volmodel/empirical.hpp"

namespace volmodel {

struct SynthEntry {
  ModelKind kind = ModelKind::Gamma;
  ModelParams params;
};

// Synthetic stream description: one generating model per window (a constant
// model is just a constant schedule). Window w draws from the substream
// (seed, w), so generation parallelizes without losing determinism.
struct SynthSpec {
  std::vector<SynthEntry> schedule;     // length = number of windows
  std::size_t samples_per_window = 0;   // >= 32
  std::uint64_t seed = 42;
  std::int64_t start = 1577836800;      // 2020-01-01T00:00:00Z
  int window_minutes = 10;
};

void validate_spec(const SynthSpec& spec);

// n draws via inverse-transform sampling: closed form for Weibull, a Gaussian
// draw exponentiated for LogNormal, and bisection of the cdf (to 1e-12 on the
// uniform variate) for Gamma and InverseGamma.
std::vector<double> sample(ModelKind kind, const ModelParams& params,
                           std::size_t n, std::uint64_t seed);

/// One WindowSnapshot per schedule entry, chronological.
std::vector<WindowSnapshot> generate(const SynthSpec& spec);

// Snapshot CSV in the ingestion format: tickers S0001..., price = s,
// volume = 1, so load_snapshots reproduces the sample multisets exactly.
void write_snapshot_csv(const std::filesystem::path& path,
                        const std::vector<WindowSnapshot>& windows);

/// Ground-truth manifest (per-window generating kind and params).
void write_manifest(const std::filesystem::path& path, const SynthSpec& spec);

/// Parses the JSON spec file accepted by `volmodel synth`.
SynthSpec load_synth_spec(const std::filesystem::path& path);

}  // namespace volmodel
