#include "volmodel/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "volmodel/errors.hpp"
#include "volmodel/rng.hpp"

namespace volmodel {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Moments {
  double mean = 0.0;
  double var = 0.0;       // population variance
  double mean_log = 0.0;
  double var_log = 0.0;   // population variance of log s
};

Moments weighted_moments(std::span<const double> values,
                         std::span<const double> weights) {
  Moments m;
  double m2 = 0.0, ml2 = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double s = values[i];
    const double w = weights[i];
    const double ls = std::log(s);
    m.mean += w * s;
    m2 += w * s * s;
    m.mean_log += w * ls;
    ml2 += w * ls * ls;
  }
  m.var = std::max(0.0, m2 - m.mean * m.mean);
  m.var_log = std::max(0.0, ml2 - m.mean_log * m.mean_log);
  return m;
}

ModelParams params_from_moments(ModelKind kind, const Moments& m) {
  switch (kind) {
    case ModelKind::Gamma: {
      if (m.var <= 0.0) throw DegenerateSampleError("zero sample variance");
      return {m.mean * m.mean / m.var, m.var / m.mean};
    }
    case ModelKind::InverseGamma: {
      if (m.var <= 0.0) throw DegenerateSampleError("zero sample variance");
      const double phi = m.mean * m.mean / m.var + 2.0;
      return {phi, m.mean * (phi - 1.0)};
    }
    case ModelKind::LogNormal: {
      if (m.var_log <= 0.0) throw DegenerateSampleError("zero log-sample variance");
      return {m.mean_log, std::sqrt(m.var_log)};
    }
    case ModelKind::Weibull: {
      if (m.var_log <= 0.0) throw DegenerateSampleError("zero log-sample variance");
      // log of a Weibull variate is Gumbel: sd(log s) = pi/(phi sqrt 6),
      // mean(log s) = log theta - gamma_E/phi.
      const double phi = kPi / (std::sqrt(m.var_log) * std::sqrt(6.0));
      return {phi, std::exp(m.mean_log + kEulerGamma / phi)};
    }
  }
  throw std::logic_error("unreachable model kind");
}

using Vec2 = std::array<double, 2>;

// phi coordinate is log-transformed except for LogNormal, theta always.
Vec2 to_internal(ModelKind kind, const ModelParams& p) {
  const double t0 = kind == ModelKind::LogNormal ? p.phi : std::log(p.phi);
  return {t0, std::log(p.theta)};
}

ModelParams from_internal(ModelKind kind, const Vec2& v) {
  const double phi = kind == ModelKind::LogNormal ? v[0] : std::exp(v[0]);
  return {phi, std::exp(v[1])};
}

void validate_emp_for_fit(const EmpiricalDistribution& emp) {
  if (emp.ecdf.empty())
    throw std::invalid_argument("empirical distribution has no ECDF points");
  double prev_s = 0.0, prev_f = 0.0;
  for (const auto& pt : emp.ecdf) {
    if (!(pt.s > prev_s) || !std::isfinite(pt.s))
      throw std::invalid_argument("ECDF s values must be positive and increasing");
    if (!(pt.f > 0.0) || pt.f > 1.0 || pt.f < prev_f)
      throw std::invalid_argument("ECDF F values must be non-decreasing in (0,1]");
    prev_s = pt.s;
    prev_f = pt.f;
  }
}

struct Objective {
  ModelKind kind;
  const EmpiricalDistribution& emp;
  mutable int evals = 0;

  double operator()(const Vec2& v) const {
    ++evals;
    if (!std::isfinite(v[0]) || !std::isfinite(v[1])) return kInf;
    const ModelParams p = from_internal(kind, v);
    if (!std::isfinite(p.phi) || !std::isfinite(p.theta) || p.theta <= 0.0)
      return kInf;
    if (kind != ModelKind::LogNormal && p.phi <= 0.0) return kInf;
    double sse = 0.0;
    for (const auto& pt : emp.ecdf) {
      const double r = cdf(kind, p, pt.s) - pt.f;
      sse += r * r;
    }
    return std::isfinite(sse) ? sse : kInf;
  }
};

struct SimplexResult {
  Vec2 best;
  double f_best = kInf;
  bool converged = false;
};

double simplex_diameter(const std::array<Vec2, 3>& p) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double dx = p[i][0] - p[j][0];
      const double dy = p[i][1] - p[j][1];
      d = std::max(d, std::hypot(dx, dy));
    }
  return d;
}

// Standard Nelder-Mead on 2 parameters (reflection 1, expansion 2,
// contraction 1/2, shrink 1/2).
SimplexResult nelder_mead(const Objective& obj, const Vec2& start,
                          double diameter_tol, int max_evals) {
  const int eval_budget = obj.evals + max_evals;
  constexpr double kStep = 0.1;
  std::array<Vec2, 3> p = {start, start, start};
  p[1][0] += kStep;
  p[2][1] += kStep;
  std::array<double, 3> f = {obj(p[0]), obj(p[1]), obj(p[2])};

  SimplexResult out;
  auto order = [&] {
    // ascending by value; ties keep index order
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2 - i; ++j)
        if (f[j + 1] < f[j]) {
          std::swap(f[j], f[j + 1]);
          std::swap(p[j], p[j + 1]);
        }
  };
  order();

  while (obj.evals < eval_budget) {
    if (simplex_diameter(p) < diameter_tol) {
      out.converged = true;
      break;
    }
    const Vec2 centroid = {0.5 * (p[0][0] + p[1][0]), 0.5 * (p[0][1] + p[1][1])};
    auto blend = [&](double coeff) -> Vec2 {
      return {centroid[0] + coeff * (centroid[0] - p[2][0]),
              centroid[1] + coeff * (centroid[1] - p[2][1])};
    };
    const Vec2 xr = blend(1.0);
    const double fr = obj(xr);
    if (fr < f[0]) {
      const Vec2 xe = blend(2.0);
      const double fe = obj(xe);
      if (fe < fr) {
        p[2] = xe;
        f[2] = fe;
      } else {
        p[2] = xr;
        f[2] = fr;
      }
    } else if (fr < f[1]) {
      p[2] = xr;
      f[2] = fr;
    } else {
      const Vec2 xc = fr < f[2] ? blend(0.5) : blend(-0.5);
      const double fc = obj(xc);
      if (fc < std::min(fr, f[2])) {
        p[2] = xc;
        f[2] = fc;
      } else {
        // shrink toward the best vertex
        for (int i = 1; i < 3; ++i) {
          p[i] = {0.5 * (p[i][0] + p[0][0]), 0.5 * (p[i][1] + p[0][1])};
          f[i] = obj(p[i]);
        }
      }
    }
    order();
  }
  out.best = p[0];
  out.f_best = f[0];
  return out;
}

}  // namespace

ModelParams initial_params(ModelKind kind, std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  for (double s : samples)
    if (!(s > 0.0) || !std::isfinite(s))
      throw std::domain_error("samples must be > 0 and finite");
  std::vector<double> w(samples.size(), 1.0 / static_cast<double>(samples.size()));
  return params_from_moments(kind, weighted_moments(samples, w));
}

FitResult fit_cdf(ModelKind kind, const EmpiricalDistribution& emp,
                  const FitOptions& options) {
  validate_emp_for_fit(emp);

  // ECDF-weighted moments reproduce the sample moments for build_empirical
  // output and give a sensible start for hand-built CDF grids.
  std::vector<double> values, weights;
  values.reserve(emp.ecdf.size());
  weights.reserve(emp.ecdf.size());
  double prev_f = 0.0;
  for (const auto& pt : emp.ecdf) {
    values.push_back(pt.s);
    weights.push_back(pt.f - prev_f);
    prev_f = pt.f;
  }
  if (prev_f != 1.0) {
    // exact-CDF grids do not reach 1; renormalize the weights
    for (double& w : weights) w /= prev_f;
  }
  const ModelParams start = params_from_moments(
      kind, weighted_moments(values, weights));

  const Objective obj{kind, emp};
  const Vec2 t0 = to_internal(kind, start);

  SplitMix64 rng(options.seed);
  SimplexResult best;
  int best_start = -1;
  for (int r = 0; r <= options.restarts; ++r) {
    Vec2 t = t0;
    if (r > 0) {
      for (int c = 0; c < 2; ++c) {
        const double sign = (rng.next() >> 63) ? 1.0 : -1.0;
        if (kind == ModelKind::LogNormal && c == 0) {
          // log-location is untransformed; perturb relative to its magnitude
          t[c] += sign * options.perturbation * std::max(std::fabs(t[c]), 1.0);
        } else {
          t[c] += std::log1p(sign * options.perturbation);
        }
      }
    }
    const SimplexResult run =
        nelder_mead(obj, t, options.diameter_tol, options.max_evals_per_start);
    if (best_start < 0 || run.f_best < best.f_best) {
      best = run;
      best_start = r;
    }
  }

  FitResult result;
  result.kind = kind;
  result.params = from_internal(kind, best.best);
  result.rel_err_phi = std::numeric_limits<double>::quiet_NaN();
  result.rel_err_theta = std::numeric_limits<double>::quiet_NaN();
  result.sse = best.f_best;
  result.n_eval = obj.evals;
  result.converged = best.converged && std::isfinite(best.f_best);
  return result;
}

RelativeErrors relative_errors(ModelKind kind, const ModelParams& params,
                               const EmpiricalDistribution& emp) {
  validate_params(kind, params);
  if (emp.ecdf.size() < 3)
    throw SingularFitError("need more than 2 ECDF points for error estimates");
  for (const auto& pt : emp.ecdf)
    if (!(pt.s > 0.0)) throw std::invalid_argument("ECDF s values must be > 0");

  const std::size_t K = emp.ecdf.size();
  const double h_phi = 1e-5 * (params.phi != 0.0 ? std::fabs(params.phi) : 1.0);
  const double h_theta = 1e-5 * params.theta;

  double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0, sse = 0.0;
  for (const auto& pt : emp.ecdf) {
    const double r = cdf(kind, params, pt.s) - pt.f;
    sse += r * r;
    const double d_phi =
        (cdf(kind, {params.phi + h_phi, params.theta}, pt.s) -
         cdf(kind, {params.phi - h_phi, params.theta}, pt.s)) /
        (2.0 * h_phi);
    const double d_theta =
        (cdf(kind, {params.phi, params.theta + h_theta}, pt.s) -
         cdf(kind, {params.phi, params.theta - h_theta}, pt.s)) /
        (2.0 * h_theta);
    jtj00 += d_phi * d_phi;
    jtj01 += d_phi * d_theta;
    jtj11 += d_theta * d_theta;
  }

  const double det = jtj00 * jtj11 - jtj01 * jtj01;
  const double scale = std::max(jtj00 * jtj11, jtj01 * jtj01);
  if (!(det > 0.0) || det <= 1e-12 * scale)
    throw SingularFitError("J'J singular: the two parameters are not "
                           "independently identifiable from this ECDF");

  const double s2 = sse / static_cast<double>(K - 2);
  const double var_phi = s2 * jtj11 / det;
  const double var_theta = s2 * jtj00 / det;

  RelativeErrors out;
  out.phi = std::sqrt(var_phi) / std::fabs(params.phi);
  out.theta = std::sqrt(var_theta) / params.theta;
  return out;
}

}  // namespace volmodel
