#include "volmodel/divergence.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "volmodel/errors.hpp"

namespace volmodel {

double generalized_kl(std::span<const double> model_density,
                      std::span<const double> empirical_density,
                      std::span<const double> widths,
                      std::span<const double> weights) {
  const std::size_t n = model_density.size();
  if (empirical_density.size() != n || widths.size() != n || weights.size() != n)
    throw std::invalid_argument("generalized_kl: bin sequences differ in length");
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(widths[i] > 0.0))
      throw std::invalid_argument("generalized_kl: bin widths must be > 0");
    if (empirical_density[i] == 0.0) continue;  // empty bin, excluded
    const double p = std::max(model_density[i], kDensityFloor);
    sum += std::log(std::fabs(p / empirical_density[i])) * weights[i] * widths[i];
    ++used;
  }
  if (used == 0)
    throw AllBinsExcludedError("generalized_kl: every bin is empty");
  return sum;
}

std::size_t count_standard_bins(const EmpiricalDistribution& emp) {
  return static_cast<std::size_t>(
      std::count_if(emp.bins.begin(), emp.bins.end(),
                    [](const HistogramBin& b) { return b.density > 0.0; }));
}

std::size_t count_tail_bins(const EmpiricalDistribution& emp) {
  return static_cast<std::size_t>(std::count_if(
      emp.bins.begin(), emp.bins.end(), [&](const HistogramBin& b) {
        return b.density > 0.0 && b.left >= emp.median;
      }));
}

double standard_distance(ModelKind kind, const ModelParams& params,
                         const EmpiricalDistribution& emp) {
  const std::size_t n = emp.bins.size();
  std::vector<double> p(n), q(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = pdf(kind, params, geometric_midpoint(emp.bins[i]));
    q[i] = emp.bins[i].density;
    w[i] = emp.bins[i].width;
  }
  return generalized_kl(p, q, w, p);
}

double tail_distance(ModelKind kind, const ModelParams& params,
                     const EmpiricalDistribution& emp) {
  std::vector<double> p, q, w;
  for (const auto& bin : emp.bins) {
    if (!(bin.density > 0.0) || bin.left < emp.median) continue;
    p.push_back(pdf(kind, params, geometric_midpoint(bin)));
    q.push_back(bin.density);
    w.push_back(bin.width);
  }
  if (p.empty())
    throw NoTailBinsError("no non-empty bin lies above the median");

  // Condition both densities on the retained tail so they compare as
  // conditional densities; summing the same bins keeps a perfect model at
  // exactly zero distance.
  double p_mass = 0.0, q_mass = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p_mass += std::max(p[i], kDensityFloor) * w[i];
    q_mass += q[i] * w[i];
  }
  std::vector<double> f(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::max(p[i], kDensityFloor) / p_mass;
    q[i] /= q_mass;
    f[i] = 1.0 / p[i];
  }
  return generalized_kl(p, q, w, f);
}

}  // namespace volmodel
