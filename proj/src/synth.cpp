#include "volmodel/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "volmodel/errors.hpp"
#include "volmodel/rng.hpp"
#include "volmodel/time_util.hpp"

namespace volmodel {

namespace {

constexpr double kTwoPi = 6.283185307179586477;

double standard_gaussian(SplitMix64& rng) {
  // Box-Muller, one variate per pair of uniforms
  const double u1 = rng.next_unit();
  const double u2 = rng.next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

// Inverts cdf(kind, params, .) at u by geometric bisection. The bracket is
// grown from the model scale, so u -> 0+ lands on a tiny positive s rather
// than underflowing to zero.
double invert_cdf(ModelKind kind, const ModelParams& params, double u) {
  double lo = params.theta;
  double hi = params.theta;
  while (lo > 1e-300 && cdf(kind, params, lo) > u) lo *= 0.5;
  while (hi < 1e300 && cdf(kind, params, hi) < u) hi *= 2.0;
  double mid = std::sqrt(lo * hi);
  for (int i = 0; i < 400; ++i) {
    mid = std::sqrt(lo * hi);
    const double c = cdf(kind, params, mid);
    if (std::fabs(c - u) <= 1e-12) break;
    if (c < u)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-15 * mid) break;
  }
  return mid;
}

}  // namespace

std::vector<double> sample(ModelKind kind, const ModelParams& params,
                           std::size_t n, std::uint64_t seed) {
  validate_params(kind, params);
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  SplitMix64 rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (kind) {
      case ModelKind::LogNormal:
        out.push_back(std::exp(params.phi + params.theta * standard_gaussian(rng)));
        break;
      case ModelKind::Weibull: {
        const double u = rng.next_unit();
        out.push_back(params.theta *
                      std::pow(-std::log1p(-u), 1.0 / params.phi));
        break;
      }
      case ModelKind::Gamma:
      case ModelKind::InverseGamma:
        out.push_back(invert_cdf(kind, params, rng.next_unit()));
        break;
    }
  }
  return out;
}

void validate_spec(const SynthSpec& spec) {
  if (spec.schedule.empty())
    throw std::invalid_argument("synth spec: need at least one window");
  if (spec.samples_per_window < kDefaultMinSamples)
    throw std::invalid_argument("synth spec: samples_per_window must be >= 32");
  if (spec.window_minutes < 1)
    throw std::invalid_argument("synth spec: window_minutes must be >= 1");
  for (const auto& entry : spec.schedule) validate_params(entry.kind, entry.params);
}

std::vector<WindowSnapshot> generate(const SynthSpec& spec) {
  validate_spec(spec);
  const std::int64_t step = static_cast<std::int64_t>(spec.window_minutes) * 60;
  std::vector<WindowSnapshot> windows(spec.schedule.size());
  for (std::size_t w = 0; w < spec.schedule.size(); ++w) {
    const auto& entry = spec.schedule[w];
    windows[w].window_start = spec.start + static_cast<std::int64_t>(w) * step;
    windows[w].samples =
        sample(entry.kind, entry.params, spec.samples_per_window,
               SplitMix64::substream(spec.seed, w).next());
  }
  return windows;
}

void write_snapshot_csv(const std::filesystem::path& path,
                        const std::vector<WindowSnapshot>& windows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "timestamp,ticker,price,volume\n";
  char row[64];
  for (const auto& win : windows) {
    const std::string ts = format_iso8601_utc(win.window_start);
    for (std::size_t i = 0; i < win.samples.size(); ++i) {
      std::snprintf(row, sizeof(row), ",S%04zu,%.17g,1\n", i + 1, win.samples[i]);
      out << ts << row;
    }
  }
}

void write_manifest(const std::filesystem::path& path, const SynthSpec& spec) {
  nlohmann::ordered_json doc;
  doc["windows"] = spec.schedule.size();
  doc["samples_per_window"] = spec.samples_per_window;
  doc["seed"] = spec.seed;
  doc["start"] = format_iso8601_utc(spec.start);
  doc["window_minutes"] = spec.window_minutes;
  auto& sched = doc["schedule"] = nlohmann::ordered_json::array();
  const std::int64_t step = static_cast<std::int64_t>(spec.window_minutes) * 60;
  for (std::size_t w = 0; w < spec.schedule.size(); ++w) {
    const auto& entry = spec.schedule[w];
    sched.push_back({{"window_start",
                      format_iso8601_utc(spec.start +
                                         static_cast<std::int64_t>(w) * step)},
                     {"kind", model_name(entry.kind)},
                     {"phi", entry.params.phi},
                     {"theta", entry.params.theta}});
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

SynthSpec load_synth_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }

  SynthSpec spec;
  try {
    const std::size_t windows = doc.at("windows").get<std::size_t>();
    spec.samples_per_window = doc.at("samples_per_window").get<std::size_t>();
    if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("start"))
      spec.start = parse_iso8601_utc(doc["start"].get<std::string>());
    if (doc.contains("window_minutes"))
      spec.window_minutes = doc["window_minutes"].get<int>();

    auto parse_entry = [](const nlohmann::json& j) {
      SynthEntry entry;
      entry.kind = model_from_name(j.at("kind").get<std::string>());
      entry.params.phi = j.at("phi").get<double>();
      entry.params.theta = j.at("theta").get<double>();
      return entry;
    };
    if (doc.contains("schedule")) {
      for (const auto& j : doc["schedule"]) spec.schedule.push_back(parse_entry(j));
      if (spec.schedule.size() != windows)
        throw ParseError(path.string() + ": schedule length " +
                         std::to_string(spec.schedule.size()) +
                         " does not match windows=" + std::to_string(windows));
    } else {
      spec.schedule.assign(windows, parse_entry(doc.at("model")));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  validate_spec(spec);
  return spec;
}

}  // namespace volmodel
