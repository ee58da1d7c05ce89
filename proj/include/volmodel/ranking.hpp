#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "volmodel/divergence.hpp"
#include "volmodel/fitting.hpp"

namespace volmodel {

enum class DistanceVariant { Standard, Tail };

const char* variant_name(DistanceVariant v);

struct RankedModel {
  ModelKind kind = ModelKind::Gamma;
  int rank = 0;          // 1 = smallest |distance|
  double distance = 0.0; // signed value of the chosen variant
};

struct WindowRanking {
  std::int64_t window_start = 0;
  std::array<RankedModel, 4> entries;  // in rank order 1..4
};

// Ranks the four models of one window by |distance| ascending; exact ties
// fall back to the fixed ModelKind declaration order. Expects exactly one
// report per model and throws std::invalid_argument otherwise.
WindowRanking rank_window(std::span<const DistanceReport> reports,
                          DistanceVariant variant);

/// pct[model][rank-1] = percentage of windows where `model` held `rank`.
struct RankMatrix {
  std::array<std::array<double, 4>, 4> pct{};
  std::size_t windows = 0;
};

RankMatrix aggregate(std::span<const WindowRanking> rankings);

/// A converged fit attached to its window, for the exported time series.
struct SeriesEntry {
  std::int64_t window_start = 0;
  FitResult fit;
};

inline constexpr int kDefaultHistogramBins = 64;

// Writes params_<model>.csv (parameter time series), errors_<model>.csv
// (histograms of the relative parameter errors) and dist_standard.csv /
// dist_tail.csv (histograms of d_standard and |d_tail| per model) into
// out_dir. Doubles are printed with 17 significant digits so a re-read
// reproduces them bit-exactly.
void export_series(const std::filesystem::path& out_dir,
                   std::span<const SeriesEntry> fits,
                   std::span<const DistanceReport> reports,
                   int histogram_bins = kDefaultHistogramBins,
                   bool include_tail = true);

/// One row per ranked window: ranks then signed distances, in model order.
void write_ranks_csv(const std::filesystem::path& path,
                     std::span<const WindowRanking> rankings);

}  // namespace volmodel
