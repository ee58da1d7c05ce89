#pragma once

namespace volmodel {

/// ln Gamma(x) for x > 0, Lanczos approximation (relative accuracy ~1e-14).
double log_gamma(double x);

enum class GammaTail { Lower, Upper };

// Regularized incomplete gamma function: P(a,x) for Lower, Q(a,x) = 1 - P(a,x)
// for Upper. Series expansion for x < a+1, continued fraction otherwise, and a
// Gauss-Legendre quadrature of the error-function form once a exceeds 100.
double regularized_incomplete_gamma(double a, double x, GammaTail tail);

/// Standard normal CDF.
double normal_cdf(double z);

}  // namespace volmodel
