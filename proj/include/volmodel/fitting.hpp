#pragma once

#include <cstdint>
#include <span>

#include "volmodel/distributions.hpp"
#include "volmodel/empirical.hpp"

namespace volmodel {

struct FitResult {
  ModelKind kind = ModelKind::Gamma;
  ModelParams params;
  double rel_err_phi = 0.0;    // NaN until relative_errors has run
  double rel_err_theta = 0.0;  // NaN until relative_errors has run
  double sse = 0.0;
  int n_eval = 0;  // objective evaluations across all starts
  bool converged = false;
};

struct FitOptions {
  int max_evals_per_start = 2000;
  double diameter_tol = 1e-8;  // simplex diameter in transformed coordinates
  int restarts = 2;            // perturbed starts in addition to the moment start
  double perturbation = 0.25;  // +-25% per coordinate, signs drawn from seed
  std::uint64_t seed = 42;
};

// Method-of-moments starting point (population moments). Throws
// DegenerateSampleError when the samples have zero spread.
ModelParams initial_params(ModelKind kind, std::span<const double> samples);

// Least-squares fit of the model CDF to the ECDF points: minimizes
// sum_k (cdf(s_k) - F(s_k))^2 with Nelder-Mead in transformed coordinates
// (log theta always, log phi except for LogNormal's log-location). Runs the
// moment start plus `restarts` perturbed starts and keeps the best. Never
// throws on non-convergence; the flag is carried in the result.
FitResult fit_cdf(ModelKind kind, const EmpiricalDistribution& emp,
                  const FitOptions& options = {});

struct RelativeErrors {
  double phi = 0.0;
  double theta = 0.0;
};

// Asymptotic least-squares standard errors, relative to the parameter
// magnitudes: J from central differences (1e-5 relative step),
// C = s^2 (J'J)^-1 with s^2 = sse/(K-2). Throws SingularFitError when J'J is
// numerically singular (unidentifiable fit).
RelativeErrors relative_errors(ModelKind kind, const ModelParams& params,
                               const EmpiricalDistribution& emp);

}  // namespace volmodel
