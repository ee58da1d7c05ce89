#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "volmodel/distributions.hpp"
#include "volmodel/empirical.hpp"

namespace volmodel {

/// Model densities are floored here before entering a log ratio.
inline constexpr double kDensityFloor = 1e-300;

/// Bin midpoint in log space; where model densities are evaluated.
inline double geometric_midpoint(const HistogramBin& bin) {
  return std::sqrt(bin.left * bin.right);
}

// Generalized Kullback-Leibler distance
//   D = sum_i ln(|P(i)/Q(i)|) F(i) dx(i)
// over bins with Q(i) > 0 (empty bins are excluded, never smoothed). Not a
// textbook divergence: it can be negative, and callers compare |D|.
double generalized_kl(std::span<const double> model_density,
                      std::span<const double> empirical_density,
                      std::span<const double> widths,
                      std::span<const double> weights);

// Full-spectrum distance with F(i) = P(i): the model pdf at each bin's
// geometric midpoint against the empirical bin density.
double standard_distance(ModelKind kind, const ModelParams& params,
                         const EmpiricalDistribution& emp);

// Tail distance with F(i) = 1/P(i) over the bins whose left edge lies at or
// above the sample median. Both densities are renormalized over the retained
// non-empty bins so the comparison stays between conditional densities; the
// 1/P weight then emphasizes the scarcest (largest) volume-prices.
double tail_distance(ModelKind kind, const ModelParams& params,
                     const EmpiricalDistribution& emp);

/// Bins entering standard_distance (non-empty).
std::size_t count_standard_bins(const EmpiricalDistribution& emp);

/// Bins entering tail_distance (non-empty, fully above the median).
std::size_t count_tail_bins(const EmpiricalDistribution& emp);

/// Per-window, per-model distances; produced only for converged fits.
struct DistanceReport {
  std::int64_t window_start = 0;
  ModelKind kind = ModelKind::Gamma;
  double d_standard = 0.0;
  double d_tail = 0.0;
  std::size_t bins_used_standard = 0;
  std::size_t bins_used_tail = 0;
};

}  // namespace volmodel
