#include "volmodel/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "support/quadrature.hpp"

using volmodel::cdf;
using volmodel::kAllModels;
using volmodel::log_pdf;
using volmodel::ModelKind;
using volmodel::ModelParams;
using volmodel::pdf;

namespace {

// representative parameter sets per model, spanning shapes below/above 1
// and scales across decades
const ModelParams kSets[4][5] = {
    {{1.0, 2.0}, {0.6, 1.0}, {2.0, 0.5}, {5.0, 3.0}, {12.0, 1e4}},      // Gamma
    {{2.0, 3.0}, {1.2, 0.8}, {3.0, 2.0}, {6.0, 50.0}, {2.5, 1e5}},      // InverseGamma
    {{0.0, 1.0}, {-1.0, 0.5}, {2.0, 1.5}, {9.0, 2.0}, {1.0, 0.25}},     // LogNormal
    {{1.0, 2.0}, {0.7, 1.0}, {1.5, 3.0}, {2.5, 10.0}, {4.0, 1e3}}};     // Weibull

double model_scale(ModelKind kind, const ModelParams& p) {
  return kind == ModelKind::LogNormal ? std::exp(p.phi) : p.theta;
}

}  // namespace

TEST_CASE("pdf closed-form spot values") {
  // phi = 1 collapses Gamma and Weibull to the exponential density
  const double expo = std::exp(-1.0) / 2.0;
  CHECK(pdf(ModelKind::Gamma, {1.0, 2.0}, 2.0) == doctest::Approx(expo).epsilon(1e-13));
  CHECK(pdf(ModelKind::Weibull, {1.0, 2.0}, 2.0) == doctest::Approx(expo).epsilon(1e-13));
}

TEST_CASE("inverse gamma reciprocal identity") {
  // p_invgamma(s; phi, theta) = p_gamma(1/s; phi, 1/theta) / s^2
  auto check_pair = [](const ModelParams& p, double s) {
    const double lhs = pdf(ModelKind::InverseGamma, p, s);
    const double rhs = pdf(ModelKind::Gamma, {p.phi, 1.0 / p.theta}, 1.0 / s) / (s * s);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  };
  check_pair({2.0, 3.0}, 1.5);
  for (const ModelParams& p : kSets[1])
    for (int i = 0; i <= 40; ++i)
      check_pair(p, p.theta * std::pow(1e3, (i - 20.0) / 20.0));
}

TEST_CASE("gamma(phi=1) and weibull(phi=1) coincide pointwise") {
  for (double theta : {0.5, 2.0, 1e4}) {
    for (int i = 0; i <= 100; ++i) {
      const double s = theta * std::pow(1e4, (i - 50.0) / 50.0);
      const double pg = pdf(ModelKind::Gamma, {1.0, theta}, s);
      const double pw = pdf(ModelKind::Weibull, {1.0, theta}, s);
      const double cg = cdf(ModelKind::Gamma, {1.0, theta}, s);
      const double cw = cdf(ModelKind::Weibull, {1.0, theta}, s);
      CHECK(std::fabs(pg - pw) <= 1e-12 * std::max(pg, pw) + 1e-300);
      CHECK(std::fabs(cg - cw) <= 1e-12);
    }
  }
}

TEST_CASE("cdf closed-form spot values") {
  CHECK(cdf(ModelKind::LogNormal, {1.0, 0.5}, std::exp(1.0)) ==
        doctest::Approx(0.5).epsilon(1e-13));
  CHECK(cdf(ModelKind::Weibull, {2.0, 1.0}, 1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("gamma cdf against quadrature of its own density") {
  const ModelParams p{3.0, 1.0};
  const double got = cdf(ModelKind::Gamma, p, 5.0);
  const double want = testsupport::integrate_log_space(
      [&](double s) { return pdf(ModelKind::Gamma, p, s); }, 1e-12, 5.0, 1e-12);
  CHECK(got == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("densities integrate to one") {
  for (ModelKind kind : kAllModels) {
    for (const ModelParams& p : kSets[volmodel::model_index(kind)]) {
      const double scale = model_scale(kind, p);
      const double mass = testsupport::integrate_log_space(
          [&](double s) { return pdf(kind, p, s); }, scale * 1e-12, scale * 1e12,
          1e-10);
      INFO(volmodel::model_name(kind), " phi=", p.phi, " theta=", p.theta);
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("cdf is non-decreasing on a wide geometric grid") {
  for (ModelKind kind : kAllModels) {
    for (const ModelParams& p : kSets[volmodel::model_index(kind)]) {
      const double scale = model_scale(kind, p);
      double prev = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const double s = scale * std::pow(1e12, (i - 500.0) / 500.0);
        const double c = cdf(kind, p, s);
        CHECK(c >= prev - 1e-12);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        prev = c;
      }
      CHECK(cdf(kind, p, scale * 1e-9) <= 1e-3);
      CHECK(cdf(kind, p, scale * 1e9) >= 1.0 - 1e-3);
    }
  }
}

TEST_CASE("finite differences of the cdf reproduce the pdf") {
  for (ModelKind kind : kAllModels) {
    for (const ModelParams& p : kSets[volmodel::model_index(kind)]) {
      // 100 points across the central quantile range [0.01, 0.99]
      const double scale = model_scale(kind, p);
      auto quantile = [&](double u) {
        double lo = scale, hi = scale;
        while (cdf(kind, p, lo) > u) lo *= 0.5;
        while (cdf(kind, p, hi) < u) hi *= 2.0;
        for (int i = 0; i < 200; ++i) {
          const double mid = std::sqrt(lo * hi);
          (cdf(kind, p, mid) < u ? lo : hi) = mid;
        }
        return std::sqrt(lo * hi);
      };
      const double s_lo = quantile(0.01), s_hi = quantile(0.99);
      for (int i = 0; i < 100; ++i) {
        const double s =
            s_lo * std::pow(s_hi / s_lo, static_cast<double>(i) / 99.0);
        const double h = 1e-6 * s;
        const double fd = (cdf(kind, p, s + h) - cdf(kind, p, s - h)) / (2.0 * h);
        const double want = pdf(kind, p, s);
        INFO(volmodel::model_name(kind), " phi=", p.phi, " theta=", p.theta,
             " s=", s);
        CHECK(std::fabs(fd - want) <= 1e-6 * std::fabs(want));
      }
    }
  }
}

TEST_CASE("log-space evaluation survives extreme arguments") {
  // phi near 500 and s/theta ratios of 1e12 must not overflow
  CHECK(std::isfinite(pdf(ModelKind::Gamma, {500.0, 1.0}, 1e12)));
  CHECK(std::isfinite(pdf(ModelKind::Gamma, {500.0, 1.0}, 1e-12)));
  CHECK(std::isfinite(pdf(ModelKind::Weibull, {450.0, 1.0}, 100.0)));
  CHECK(pdf(ModelKind::Weibull, {450.0, 1.0}, 100.0) == 0.0);
  CHECK(cdf(ModelKind::Weibull, {450.0, 1.0}, 100.0) == 1.0);
  CHECK(std::isfinite(pdf(ModelKind::InverseGamma, {400.0, 1e6}, 1e-6)));
  CHECK(std::isfinite(log_pdf(ModelKind::LogNormal, {0.0, 1.0}, 1e12)));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(pdf(ModelKind::Gamma, {1.0, 1.0}, 0.0), std::domain_error);
  CHECK_THROWS_AS(pdf(ModelKind::Gamma, {1.0, 1.0}, -2.0), std::domain_error);
  CHECK_THROWS_AS(cdf(ModelKind::Weibull, {1.0, 1.0}, 0.0), std::domain_error);
  CHECK_THROWS_AS(pdf(ModelKind::Gamma, {-1.0, 1.0}, 1.0), std::domain_error);
  CHECK_THROWS_AS(pdf(ModelKind::Gamma, {1.0, 0.0}, 1.0), std::domain_error);
  CHECK_THROWS_AS(pdf(ModelKind::Weibull, {0.0, 1.0}, 1.0), std::domain_error);
  // LogNormal's phi is a log-location and may be negative
  CHECK(std::isfinite(pdf(ModelKind::LogNormal, {-3.0, 1.0}, 1.0)));
  CHECK_THROWS_AS(pdf(ModelKind::LogNormal, {0.0, -1.0}, 1.0), std::domain_error);
}

TEST_CASE("model names round-trip") {
  for (ModelKind kind : kAllModels)
    CHECK(volmodel::model_from_name(volmodel::model_name(kind)) == kind);
  CHECK_THROWS_AS(volmodel::model_from_name("cauchy"), std::invalid_argument);
}
