#include "volmodel/fitting.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "volmodel/errors.hpp"
#include "volmodel/rng.hpp"
#include "volmodel/synth.hpp"

using namespace volmodel;

namespace {

// ECDF built from the exact analytic CDF on a geometric grid spanning the
// central quantile range; the cleanest self-consistency target.
EmpiricalDistribution exact_cdf_grid(ModelKind kind, const ModelParams& p,
                                     int points) {
  auto quantile = [&](double u) {
    double lo = p.theta, hi = p.theta;
    if (kind == ModelKind::LogNormal) lo = hi = std::exp(p.phi);
    while (cdf(kind, p, lo) > u) lo *= 0.5;
    while (cdf(kind, p, hi) < u) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = std::sqrt(lo * hi);
      (cdf(kind, p, mid) < u ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
  };
  const double s_lo = quantile(1e-3), s_hi = quantile(1.0 - 1e-3);
  EmpiricalDistribution emp;
  emp.n = points;
  for (int i = 0; i < points; ++i) {
    const double s = s_lo * std::pow(s_hi / s_lo, i / (points - 1.0));
    emp.ecdf.push_back({s, cdf(kind, p, s)});
  }
  emp.median = quantile(0.5);
  return emp;
}

double sse_at(ModelKind kind, const ModelParams& p,
              const EmpiricalDistribution& emp) {
  double sse = 0.0;
  for (const auto& pt : emp.ecdf) {
    const double r = cdf(kind, p, pt.s) - pt.f;
    sse += r * r;
  }
  return sse;
}

EmpiricalDistribution emp_from_samples(std::vector<double> samples) {
  return build_empirical(samples);
}

}  // namespace

TEST_CASE("initial_params method-of-moments formulas") {
  // mean 2, population variance 2
  std::vector<double> samples;
  const double r = std::sqrt(2.0);
  for (int i = 0; i < 16; ++i) {
    samples.push_back(2.0 - r);
    samples.push_back(2.0 + r);
  }
  const ModelParams gamma = initial_params(ModelKind::Gamma, samples);
  CHECK(gamma.phi == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(gamma.theta == doctest::Approx(1.0).epsilon(1e-12));

  const ModelParams ig = initial_params(ModelKind::InverseGamma, samples);
  CHECK(ig.phi == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(ig.theta == doctest::Approx(6.0).epsilon(1e-12));

  std::vector<double> flat(40, std::exp(1.0));
  CHECK_THROWS_AS(initial_params(ModelKind::LogNormal, flat),
                  DegenerateSampleError);
  CHECK_THROWS_AS(initial_params(ModelKind::Gamma, flat), DegenerateSampleError);
}

TEST_CASE("initial_params lognormal and weibull moment relations") {
  const auto draws = sample(ModelKind::LogNormal, {1.5, 0.75}, 20000, 77);
  const ModelParams ln = initial_params(ModelKind::LogNormal, draws);
  CHECK(ln.phi == doctest::Approx(1.5).epsilon(0.02));
  CHECK(ln.theta == doctest::Approx(0.75).epsilon(0.03));

  const auto wdraws = sample(ModelKind::Weibull, {1.8, 5.0}, 20000, 78);
  const ModelParams wb = initial_params(ModelKind::Weibull, wdraws);
  CHECK(wb.phi == doctest::Approx(1.8).epsilon(0.05));
  CHECK(wb.theta == doctest::Approx(5.0).epsilon(0.05));
}

TEST_CASE("initial_params recovers inverse gamma shape from draws") {
  const auto draws = sample(ModelKind::InverseGamma, {4.0, 6.0}, 10000, 4242);
  const ModelParams p = initial_params(ModelKind::InverseGamma, draws);
  CHECK(p.phi >= 3.2);
  CHECK(p.phi <= 4.8);
}

TEST_CASE("fit recovers the generating parameters from exact CDF grids") {
  const ModelParams sets[4][3] = {
      {{1.5, 2.0}, {0.8, 1.0}, {4.0, 0.5}},    // Gamma
      {{3.0, 2.0}, {1.5, 0.7}, {5.0, 40.0}},   // InverseGamma
      {{0.0, 1.0}, {-1.0, 0.5}, {2.0, 1.4}},   // LogNormal
      {{1.5, 3.0}, {0.7, 1.0}, {2.5, 10.0}}};  // Weibull
  for (ModelKind kind : kAllModels) {
    for (const ModelParams& truth : sets[model_index(kind)]) {
      const auto emp = exact_cdf_grid(kind, truth, 200);
      const FitResult fit = fit_cdf(kind, emp);
      INFO(model_name(kind), " phi=", truth.phi, " theta=", truth.theta,
           " got phi=", fit.params.phi, " theta=", fit.params.theta);
      CHECK(fit.converged);
      CHECK(fit.sse < 1e-12);
      const double phi_scale =
          kind == ModelKind::LogNormal ? std::max(1.0, std::fabs(truth.phi))
                                       : std::fabs(truth.phi);
      CHECK(std::fabs(fit.params.phi - truth.phi) <= 1e-4 * phi_scale);
      CHECK(std::fabs(fit.params.theta - truth.theta) <= 1e-4 * truth.theta);
    }
  }
}

TEST_CASE("fit on lognormal draws matches the exact MLE oracle") {
  const auto draws = sample(ModelKind::LogNormal, {0.0, 1.0}, 5000, 1234);
  const auto emp = emp_from_samples(draws);
  const FitResult fit = fit_cdf(ModelKind::LogNormal, emp);
  CHECK(fit.converged);
  CHECK(fit.params.phi >= -0.05);
  CHECK(fit.params.phi <= 0.05);
  CHECK(fit.params.theta >= 0.95);
  CHECK(fit.params.theta <= 1.05);

  // the exact MLE for lognormal is the mean/stdev of log samples
  double mlog = 0.0;
  for (double s : draws) mlog += std::log(s);
  mlog /= draws.size();
  double vlog = 0.0;
  for (double s : draws) vlog += (std::log(s) - mlog) * (std::log(s) - mlog);
  const double sdlog = std::sqrt(vlog / draws.size());
  CHECK(std::fabs(fit.params.theta - sdlog) <= 0.02 * sdlog);
  CHECK(std::fabs(fit.params.phi - mlog) <= 0.02 * std::max(0.05, std::fabs(mlog)));
}

TEST_CASE("wrong model fits worse: gamma draws under a weibull fit") {
  const auto draws = sample(ModelKind::Gamma, {2.0, 1.0}, 5000, 999);
  const auto emp = emp_from_samples(draws);
  const FitResult right = fit_cdf(ModelKind::Gamma, emp);
  const FitResult wrong = fit_cdf(ModelKind::Weibull, emp);
  CHECK(right.converged);
  CHECK(wrong.converged);
  CHECK(wrong.sse > right.sse);
}

TEST_CASE("returned sse never exceeds the start's sse") {
  SplitMix64 seeds(11);
  for (ModelKind kind : kAllModels) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto draws =
          sample(kind, {1.6, 2.5}, 500 + 250 * rep, seeds.next());
      const auto emp = emp_from_samples(draws);
      const FitResult fit = fit_cdf(kind, emp);
      const double start_sse = sse_at(kind, initial_params(kind, draws), emp);
      CHECK(fit.sse <= start_sse + 1e-15);
    }
  }
}

TEST_CASE("fit is deterministic for a fixed seed") {
  const auto draws = sample(ModelKind::Weibull, {1.2, 4.0}, 2000, 5150);
  const auto emp = emp_from_samples(draws);
  FitOptions opts;
  opts.seed = 321;
  const FitResult a = fit_cdf(ModelKind::Weibull, emp, opts);
  const FitResult b = fit_cdf(ModelKind::Weibull, emp, opts);
  CHECK(a.params.phi == b.params.phi);
  CHECK(a.params.theta == b.params.theta);
  CHECK(a.sse == b.sse);
  CHECK(a.n_eval == b.n_eval);
  CHECK(a.converged == b.converged);
}

TEST_CASE("scale equivariance of the fitted parameters") {
  const double c = 137.0;
  SplitMix64 seeds(222);
  const ModelParams truth{1.7, 2.0};
  for (ModelKind kind : kAllModels) {
    const auto draws = sample(kind, truth, 3000, seeds.next());
    std::vector<double> scaled(draws);
    for (double& s : scaled) s *= c;
    const FitResult base = fit_cdf(kind, emp_from_samples(draws));
    const FitResult big = fit_cdf(kind, emp_from_samples(scaled));
    REQUIRE(base.converged);
    REQUIRE(big.converged);
    INFO(model_name(kind));
    if (kind == ModelKind::LogNormal) {
      CHECK(std::fabs(big.params.phi - (base.params.phi + std::log(c))) <=
            1e-3 * std::fabs(base.params.phi + std::log(c)));
      CHECK(std::fabs(big.params.theta - base.params.theta) <=
            1e-3 * base.params.theta);
    } else {
      CHECK(std::fabs(big.params.theta - c * base.params.theta) <=
            1e-3 * c * base.params.theta);
      CHECK(std::fabs(big.params.phi - base.params.phi) <=
            1e-3 * base.params.phi);
    }
  }
}

TEST_CASE("fit rejects invalid empirical input") {
  EmpiricalDistribution empty;
  CHECK_THROWS_AS(fit_cdf(ModelKind::Gamma, empty), std::invalid_argument);

  EmpiricalDistribution bad;
  bad.ecdf = {{-1.0, 0.5}, {2.0, 1.0}};
  CHECK_THROWS_AS(fit_cdf(ModelKind::Gamma, bad), std::invalid_argument);

  EmpiricalDistribution nonmono;
  nonmono.ecdf = {{1.0, 0.8}, {2.0, 0.5}};
  CHECK_THROWS_AS(fit_cdf(ModelKind::Gamma, nonmono), std::invalid_argument);
}

TEST_CASE("relative errors are tiny for an exact self-fit") {
  const ModelParams truth{1.5, 3.0};
  const auto emp = exact_cdf_grid(ModelKind::Weibull, truth, 200);
  const FitResult fit = fit_cdf(ModelKind::Weibull, emp);
  REQUIRE(fit.converged);
  const RelativeErrors err = relative_errors(ModelKind::Weibull, fit.params, emp);
  CHECK(err.phi < 1e-6);
  CHECK(err.theta < 1e-6);
}

TEST_CASE("relative errors on a lognormal sampling fit") {
  const auto draws = sample(ModelKind::LogNormal, {1.0, 1.0}, 5000, 8080);
  const auto emp = emp_from_samples(draws);
  const FitResult fit = fit_cdf(ModelKind::LogNormal, emp);
  REQUIRE(fit.converged);
  const RelativeErrors err =
      relative_errors(ModelKind::LogNormal, fit.params, emp);
  CHECK(err.phi > 0.0);
  CHECK(err.theta > 0.0);
  CHECK(err.phi < 0.05);
  CHECK(err.theta < 0.05);
}

TEST_CASE("a rank-deficient ECDF raises the singular error") {
  EmpiricalDistribution flat;
  for (int i = 0; i < 50; ++i) flat.ecdf.push_back({2.0, 0.5});
  CHECK_THROWS_AS(relative_errors(ModelKind::Gamma, {2.0, 1.0}, flat),
                  SingularFitError);
}
