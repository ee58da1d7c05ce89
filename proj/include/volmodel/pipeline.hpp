#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "volmodel/ranking.hpp"

namespace volmodel {

enum class VariantSelection { Standard, Tail, Both };

const char* selection_name(VariantSelection v);
VariantSelection selection_from_name(std::string_view name);

struct RunConfig {
  std::string input;
  std::string out_dir;
  int window_minutes = 10;
  int bins_per_decade = kDefaultBinsPerDecade;
  std::size_t min_samples = kDefaultMinSamples;
  VariantSelection variant = VariantSelection::Both;
  int jobs = 0;  // 0 = all cores; parallelism never changes the artifacts
  std::uint64_t seed = 42;
  int histogram_bins = kDefaultHistogramBins;
};

struct ExclusionCounts {
  std::size_t too_small = 0;
  std::size_t degenerate = 0;
  std::size_t unconverged = 0;
  std::size_t no_tail_bins = 0;  // standard-ranked windows missing a tail
};

struct RunResult {
  std::size_t rows = 0;
  std::size_t dropped_records = 0;
  std::size_t windows_total = 0;
  std::size_t ranked_standard = 0;
  std::size_t ranked_tail = 0;
  ExclusionCounts excluded;
  std::optional<RankMatrix> matrix_standard;
  std::optional<RankMatrix> matrix_tail;
};

// The fit pipeline: load snapshots, build each window's empirical
// distribution, fit the four models, compute the selected distances, rank,
// and write all artifacts into config.out_dir. Windows are dispatched to a
// worker pool; results are merged in chronological order so identical inputs
// give byte-identical artifacts at any parallelism degree.
//
// Throws ParseError for malformed input and EmptyResultError when no window
// could be ranked under any selected variant.
RunResult run_fit(const RunConfig& config);

/// Text block `volmodel fit` prints: window counts and rank-1 percentages.
std::string summarize(const RunResult& result);

// Renders the rank matrices and distance summary statistics of a completed
// run directory. Throws MissingArtifactError naming the first absent file.
std::string report_from_dir(const std::string& run_dir);

}  // namespace volmodel
