#include "volmodel/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "volmodel/special_functions.hpp"

namespace volmodel {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

void require_positive_s(double s) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw std::domain_error("volume-price s must be > 0 and finite");
}

}  // namespace

const char* model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Gamma: return "gamma";
    case ModelKind::InverseGamma: return "inverse_gamma";
    case ModelKind::LogNormal: return "lognormal";
    case ModelKind::Weibull: return "weibull";
  }
  return "?";
}

ModelKind model_from_name(std::string_view name) {
  for (ModelKind kind : kAllModels)
    if (name == model_name(kind)) return kind;
  throw std::invalid_argument("unknown model name: " + std::string(name));
}

void validate_params(ModelKind kind, const ModelParams& params) {
  if (!(params.theta > 0.0) || !std::isfinite(params.theta))
    throw std::domain_error(std::string(model_name(kind)) +
                            ": theta must be > 0 and finite");
  if (kind == ModelKind::LogNormal) {
    if (!std::isfinite(params.phi))
      throw std::domain_error("lognormal: phi must be finite");
  } else if (!(params.phi > 0.0) || !std::isfinite(params.phi)) {
    throw std::domain_error(std::string(model_name(kind)) +
                            ": phi must be > 0 and finite");
  }
}

double log_pdf(ModelKind kind, const ModelParams& params, double s) {
  validate_params(kind, params);
  require_positive_s(s);
  const double phi = params.phi;
  const double theta = params.theta;
  switch (kind) {
    case ModelKind::Gamma:
      return (phi - 1.0) * std::log(s) - phi * std::log(theta) - log_gamma(phi) -
             s / theta;
    case ModelKind::InverseGamma:
      return phi * std::log(theta) - log_gamma(phi) - (phi + 1.0) * std::log(s) -
             theta / s;
    case ModelKind::LogNormal: {
      const double z = (std::log(s) - phi) / theta;
      return -0.5 * z * z - std::log(theta * s) - 0.5 * kLogTwoPi;
    }
    case ModelKind::Weibull: {
      // (s/theta)^phi overflows exp range well before the prefactor does.
      const double t = phi * std::log(s / theta);
      const double pow_term =
          t > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(t);
      return std::log(phi) - phi * std::log(theta) + (phi - 1.0) * std::log(s) -
             pow_term;
    }
  }
  throw std::logic_error("unreachable model kind");
}

double pdf(ModelKind kind, const ModelParams& params, double s) {
  return std::exp(log_pdf(kind, params, s));
}

double cdf(ModelKind kind, const ModelParams& params, double s) {
  validate_params(kind, params);
  require_positive_s(s);
  const double phi = params.phi;
  const double theta = params.theta;
  switch (kind) {
    case ModelKind::Gamma:
      return regularized_incomplete_gamma(phi, s / theta, GammaTail::Lower);
    case ModelKind::InverseGamma:
      return regularized_incomplete_gamma(phi, theta / s, GammaTail::Upper);
    case ModelKind::LogNormal:
      return normal_cdf((std::log(s) - phi) / theta);
    case ModelKind::Weibull: {
      const double t = phi * std::log(s / theta);
      if (t > 700.0) return 1.0;
      return -std::expm1(-std::exp(t));
    }
  }
  throw std::logic_error("unreachable model kind");
}

}  // namespace volmodel
