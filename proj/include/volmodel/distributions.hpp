#pragma once

#include <array>
#include <string_view>

namespace volmodel {

// The four candidate models, in the fixed order used for deterministic
// tie-breaking throughout the pipeline.
enum class ModelKind { Gamma = 0, InverseGamma = 1, LogNormal = 2, Weibull = 3 };

inline constexpr std::array<ModelKind, 4> kAllModels = {
    ModelKind::Gamma, ModelKind::InverseGamma, ModelKind::LogNormal,
    ModelKind::Weibull};

inline constexpr std::size_t model_index(ModelKind kind) {
  return static_cast<std::size_t>(kind);
}

/// Stable identifier used in file names, CSV columns and JSON.
const char* model_name(ModelKind kind);

/// Inverse of model_name; throws std::invalid_argument on unknown names.
ModelKind model_from_name(std::string_view name);

// Two-parameter family: phi is the shape (log-location for LogNormal), theta
// the scale (log-scale for LogNormal). theta > 0 always; phi > 0 except for
// LogNormal, where any finite real is a valid log-location.
struct ModelParams {
  double phi = 0.0;
  double theta = 0.0;
};

/// Throws std::domain_error if params violate the per-kind invariants.
void validate_params(ModelKind kind, const ModelParams& params);

// Log density at s > 0. Evaluated fully in log space so that large shapes
// (phi up to ~500) and s/theta ratios spanning many decades stay finite.
double log_pdf(ModelKind kind, const ModelParams& params, double s);

/// Density at s > 0; exp of log_pdf, may underflow to 0 in far tails.
double pdf(ModelKind kind, const ModelParams& params, double s);

/// Cumulative distribution at s > 0.
double cdf(ModelKind kind, const ModelParams& params, double s);

}  // namespace volmodel
