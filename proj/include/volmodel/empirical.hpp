#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace volmodel {

/// One CSV row: a ticker's last trade price and traded volume at a snapshot.
struct SnapshotRecord {
  std::int64_t timestamp = 0;
  std::string ticker;
  double price = 0.0;
  double volume = 0.0;
};

/// All volume-price values observed in one aggregation window.
struct WindowSnapshot {
  std::int64_t window_start = 0;
  std::vector<double> samples;  // every s > 0; zero-volume records are dropped
};

struct EcdfPoint {
  double s = 0.0;  // sample value
  double f = 0.0;  // cumulative fraction, ties carry the highest step
};

struct HistogramBin {
  double left = 0.0;
  double right = 0.0;
  double width = 0.0;    // linear width, right - left
  double density = 0.0;  // count / (n * width)
  std::size_t count = 0;
};

// ECDF plus log-binned histogram of one window's samples. Built by
// build_empirical; tests may aggregate-construct synthetic ones directly.
struct EmpiricalDistribution {
  std::vector<EcdfPoint> ecdf;  // at sorted unique sample values
  std::vector<HistogramBin> bins;
  std::size_t n = 0;
  double median = 0.0;
};

/// s = p * V. Domain error if p <= 0 or V < 0.
double volume_price(double price, double volume);

struct LoadStats {
  std::size_t rows = 0;     // data rows parsed
  std::size_t dropped = 0;  // rows with zero volume or non-positive price
};

// Reads the snapshot CSV (header `timestamp,ticker,price,volume`; gzip when
// the name ends in .gz), groups records into window_minutes windows and
// returns them in chronological order. Throws ParseError with the offending
// line number, EmptyResultError when no valid record remains.
std::vector<WindowSnapshot> load_snapshots(const std::string& path,
                                           int window_minutes,
                                           LoadStats* stats = nullptr);

/// Same parser over an in-memory buffer; `origin` labels error messages.
std::vector<WindowSnapshot> parse_snapshots(std::string_view csv_text,
                                            int window_minutes,
                                            LoadStats* stats = nullptr,
                                            const std::string& origin = "<memory>");

inline constexpr std::size_t kDefaultMinSamples = 32;
inline constexpr int kDefaultBinsPerDecade = 8;

// Builds the ECDF (F(s_k) = k/n at sorted unique values), the log-spaced
// histogram (bins_per_decade bins per decade between min and max sample) and
// the order-statistic median. Throws InsufficientSamplesError below
// min_samples and DegenerateSampleError when all samples coincide.
EmpiricalDistribution build_empirical(std::span<const double> samples,
                                      int bins_per_decade = kDefaultBinsPerDecade,
                                      std::size_t min_samples = kDefaultMinSamples);

}  // namespace volmodel
