#include "volmodel/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "volmodel/errors.hpp"
#include "volmodel/log.hpp"
#include "volmodel/rng.hpp"
#include "volmodel/time_util.hpp"
#include "volmodel/version.hpp"

namespace volmodel {

const char* selection_name(VariantSelection v) {
  switch (v) {
    case VariantSelection::Standard: return "standard";
    case VariantSelection::Tail: return "tail";
    case VariantSelection::Both: return "both";
  }
  return "?";
}

VariantSelection selection_from_name(std::string_view name) {
  if (name == "standard") return VariantSelection::Standard;
  if (name == "tail") return VariantSelection::Tail;
  if (name == "both") return VariantSelection::Both;
  throw std::invalid_argument("unknown variant: " + std::string(name));
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class WindowStatus { Ranked, TooSmall, Degenerate, Unconverged };

struct WindowWork {
  std::int64_t window_start = 0;
  WindowStatus status = WindowStatus::Ranked;
  bool has_fits = false;
  bool has_standard = false;
  bool has_tail = false;
  std::array<FitResult, 4> fits{};
  std::array<DistanceReport, 4> reports{};
};

WindowWork process_window(const RunConfig& config, const WindowSnapshot& win,
                          std::size_t index) {
  WindowWork work;
  work.window_start = win.window_start;

  EmpiricalDistribution emp;
  try {
    emp = build_empirical(win.samples, config.bins_per_decade, config.min_samples);
  } catch (const InsufficientSamplesError&) {
    work.status = WindowStatus::TooSmall;
    return work;
  } catch (const DegenerateSampleError&) {
    work.status = WindowStatus::Degenerate;
    return work;
  }

  SplitMix64 seeder = SplitMix64::substream(config.seed, index);
  bool all_converged = true;
  try {
    for (ModelKind kind : kAllModels) {
      FitOptions opts;
      opts.seed = seeder.next();
      FitResult fit = fit_cdf(kind, emp, opts);
      all_converged = all_converged && fit.converged;
      work.fits[model_index(kind)] = fit;
    }
  } catch (const DegenerateSampleError&) {
    work.status = WindowStatus::Degenerate;
    return work;
  }
  work.has_fits = true;

  if (!all_converged) {
    work.status = WindowStatus::Unconverged;
    return work;
  }

  for (ModelKind kind : kAllModels) {
    FitResult& fit = work.fits[model_index(kind)];
    try {
      const RelativeErrors err = relative_errors(kind, fit.params, emp);
      fit.rel_err_phi = err.phi;
      fit.rel_err_theta = err.theta;
    } catch (const SingularFitError&) {
      logging::warnf("window %s: %s fit has singular J'J, errors omitted",
                     format_iso8601_utc(win.window_start).c_str(),
                     model_name(kind));
    }
  }

  const bool want_standard = config.variant != VariantSelection::Tail;
  const bool want_tail = config.variant != VariantSelection::Standard;
  work.has_standard = want_standard;
  work.has_tail = want_tail;
  for (ModelKind kind : kAllModels) {
    DistanceReport& rep = work.reports[model_index(kind)];
    rep.window_start = win.window_start;
    rep.kind = kind;
    rep.d_standard = kNaN;
    rep.d_tail = kNaN;
    const ModelParams& params = work.fits[model_index(kind)].params;
    if (want_standard) {
      rep.d_standard = standard_distance(kind, params, emp);
      rep.bins_used_standard = count_standard_bins(emp);
    }
    if (work.has_tail) {
      try {
        rep.d_tail = tail_distance(kind, params, emp);
        rep.bins_used_tail = count_tail_bins(emp);
      } catch (const NoTailBinsError&) {
        work.has_tail = false;  // emp-level condition, same for all models
      }
    }
  }
  return work;
}

std::vector<WindowWork> process_all(const RunConfig& config,
                                    const std::vector<WindowSnapshot>& windows) {
  std::vector<WindowWork> work(windows.size());
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto run = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= windows.size()) return;
      try {
        work[i] = process_window(config, windows[i], i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<std::size_t>(1, windows.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return work;
}

nlohmann::ordered_json matrix_json(const std::optional<RankMatrix>& matrix) {
  if (!matrix.has_value()) return nullptr;
  nlohmann::ordered_json j;
  for (ModelKind kind : kAllModels) {
    j[model_name(kind)] = matrix->pct[model_index(kind)];
  }
  return j;
}

void write_summary_json(const std::filesystem::path& path,
                        const RunConfig& config, const RunResult& result) {
  nlohmann::ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  // config echo for provenance; jobs and the output directory are omitted,
  // neither may affect artifact bytes
  doc["config"] = {{"input", config.input},
                   {"window_minutes", config.window_minutes},
                   {"bins_per_decade", config.bins_per_decade},
                   {"min_samples", config.min_samples},
                   {"variant", selection_name(config.variant)},
                   {"seed", config.seed},
                   {"histogram_bins", config.histogram_bins}};
  doc["input_rows"] = result.rows;
  doc["dropped_records"] = result.dropped_records;
  doc["windows_total"] = result.windows_total;
  doc["windows_ranked"] = {{"standard", result.ranked_standard},
                           {"tail", result.ranked_tail}};
  doc["windows_excluded"] = {{"too_small", result.excluded.too_small},
                             {"degenerate", result.excluded.degenerate},
                             {"unconverged", result.excluded.unconverged},
                             {"no_tail_bins", result.excluded.no_tail_bins}};
  doc["rank_matrix_standard"] = matrix_json(result.matrix_standard);
  doc["rank_matrix_tail"] = matrix_json(result.matrix_tail);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace

RunResult run_fit(const RunConfig& config) {
  if (config.bins_per_decade < 2)
    throw std::invalid_argument("bins_per_decade must be >= 2");
  if (config.window_minutes < 1)
    throw std::invalid_argument("window_minutes must be >= 1");

  LoadStats stats;
  const std::vector<WindowSnapshot> windows =
      load_snapshots(config.input, config.window_minutes, &stats);
  logging::infof("%s: %zu windows, %zu records", config.input.c_str(),
                 windows.size(), stats.rows);

  const std::vector<WindowWork> work = process_all(config, windows);

  RunResult result;
  result.rows = stats.rows;
  result.dropped_records = stats.dropped;
  result.windows_total = windows.size();

  std::vector<SeriesEntry> series;
  std::vector<DistanceReport> reports;
  std::vector<WindowRanking> ranked_standard, ranked_tail;
  for (const auto& w : work) {
    if (w.has_fits)
      for (const auto& fit : w.fits) series.push_back({w.window_start, fit});
    switch (w.status) {
      case WindowStatus::TooSmall: ++result.excluded.too_small; continue;
      case WindowStatus::Degenerate: ++result.excluded.degenerate; continue;
      case WindowStatus::Unconverged: ++result.excluded.unconverged; continue;
      case WindowStatus::Ranked: break;
    }
    reports.insert(reports.end(), w.reports.begin(), w.reports.end());
    if (w.has_standard)
      ranked_standard.push_back(rank_window(w.reports, DistanceVariant::Standard));
    if (w.has_tail)
      ranked_tail.push_back(rank_window(w.reports, DistanceVariant::Tail));
    else if (config.variant != VariantSelection::Standard)
      ++result.excluded.no_tail_bins;
  }
  result.ranked_standard = ranked_standard.size();
  result.ranked_tail = ranked_tail.size();

  const bool want_standard = config.variant != VariantSelection::Tail;
  const bool want_tail = config.variant != VariantSelection::Standard;
  const std::size_t usable = (want_standard ? result.ranked_standard : 0) +
                             (want_tail ? result.ranked_tail : 0);
  if (usable == 0) {
    std::ostringstream msg;
    msg << "no rankable window in " << config.input << " (" << windows.size()
        << " windows: too_small=" << result.excluded.too_small
        << " degenerate=" << result.excluded.degenerate
        << " unconverged=" << result.excluded.unconverged
        << " no_tail_bins=" << result.excluded.no_tail_bins << ")";
    throw EmptyResultError(msg.str());
  }

  if (!ranked_standard.empty()) result.matrix_standard = aggregate(ranked_standard);
  if (!ranked_tail.empty()) result.matrix_tail = aggregate(ranked_tail);

  const std::filesystem::path out_dir(config.out_dir);
  std::filesystem::create_directories(out_dir);
  export_series(out_dir, series, reports, config.histogram_bins, want_tail);
  if (want_standard)
    write_ranks_csv(out_dir / "ranks_standard.csv", ranked_standard);
  if (want_tail) write_ranks_csv(out_dir / "ranks_tail.csv", ranked_tail);
  write_summary_json(out_dir / "summary.json", config, result);
  return result;
}

namespace {

void append_rank1_line(std::ostringstream& out, const char* label,
                       const std::optional<RankMatrix>& matrix) {
  if (!matrix.has_value()) return;
  out << "rank-1 percentage (" << label << "):";
  for (ModelKind kind : kAllModels) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.1f", matrix->pct[model_index(kind)][0]);
    out << ' ' << model_name(kind) << '=' << buf << '%';
  }
  out << '\n';
}

}  // namespace

std::string summarize(const RunResult& result) {
  std::ostringstream out;
  out << "windows processed: " << result.windows_total << " (ranked standard "
      << result.ranked_standard << ", tail " << result.ranked_tail << ")\n";
  out << "windows excluded: too_small=" << result.excluded.too_small
      << " degenerate=" << result.excluded.degenerate
      << " unconverged=" << result.excluded.unconverged
      << " no_tail_bins=" << result.excluded.no_tail_bins << '\n';
  append_rank1_line(out, "standard", result.matrix_standard);
  append_rank1_line(out, "tail", result.matrix_tail);
  return out.str();
}

namespace {

struct RanksFile {
  std::vector<std::array<int, 4>> ranks;        // per window, by model
  std::vector<std::array<double, 4>> distances;  // per window, by model
};

RanksFile read_ranks_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingArtifactError("missing artifact: " + path.string());
  RanksFile out;
  std::string line;
  bool header = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::array<int, 4> ranks{};
    std::array<double, 4> dists{};
    std::stringstream row(line);
    std::string field;
    std::getline(row, field, ',');  // window_start
    for (int i = 0; i < 4; ++i) {
      if (!std::getline(row, field, ','))
        throw ParseError(path.string() + ":" + std::to_string(line_no) +
                         ": short row");
      ranks[i] = std::stoi(field);
    }
    for (int i = 0; i < 4; ++i) {
      if (!std::getline(row, field, ','))
        throw ParseError(path.string() + ":" + std::to_string(line_no) +
                         ": short row");
      dists[i] = std::stod(field);
    }
    out.ranks.push_back(ranks);
    out.distances.push_back(dists);
  }
  return out;
}

void render_variant(std::ostringstream& out, const char* label,
                    const RanksFile& data, bool absolute) {
  out << "accuracy ranking (" << label << "), " << data.ranks.size()
      << " windows\n";
  out << "  model            rank1   rank2   rank3   rank4\n";
  for (ModelKind kind : kAllModels) {
    std::array<std::size_t, 4> counts{};
    for (const auto& row : data.ranks) ++counts[row[model_index(kind)] - 1];
    char buf[96];
    const double total = data.ranks.empty() ? 1.0 : double(data.ranks.size());
    std::snprintf(buf, sizeof(buf), "  %-14s %6.1f%% %6.1f%% %6.1f%% %6.1f%%\n",
                  model_name(kind), 100.0 * counts[0] / total,
                  100.0 * counts[1] / total, 100.0 * counts[2] / total,
                  100.0 * counts[3] / total);
    out << buf;
  }
  out << "  distance statistics (" << (absolute ? "|d|" : "d") << "):\n";
  for (ModelKind kind : kAllModels) {
    double sum = 0.0, mn = std::numeric_limits<double>::infinity(),
           mx = -std::numeric_limits<double>::infinity();
    for (const auto& row : data.distances) {
      double v = row[model_index(kind)];
      if (absolute) v = std::fabs(v);
      sum += v;
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    const double mean = data.distances.empty() ? 0.0 : sum / data.distances.size();
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "  %-14s mean=%-12.6g min=%-12.6g max=%-12.6g\n",
                  model_name(kind), mean, data.distances.empty() ? 0.0 : mn,
                  data.distances.empty() ? 0.0 : mx);
    out << buf;
  }
}

}  // namespace

std::string report_from_dir(const std::string& run_dir) {
  const std::filesystem::path dir(run_dir);
  const std::filesystem::path summary_path = dir / "summary.json";
  std::ifstream summary_in(summary_path, std::ios::binary);
  if (!summary_in)
    throw MissingArtifactError("missing artifact: " + summary_path.string());
  nlohmann::json summary;
  try {
    summary_in >> summary;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(summary_path.string() + ": " + e.what());
  }

  std::ostringstream out;
  out << "run: " << summary.value("tool", "?") << ' '
      << summary.value("version", "?") << '\n';
  const std::string variant =
      summary.contains("config") ? summary["config"].value("variant", "both")
                                 : "both";
  out << "windows: total=" << summary.value("windows_total", 0ULL);
  if (summary.contains("windows_excluded")) {
    const auto& ex = summary["windows_excluded"];
    out << " excluded(too_small=" << ex.value("too_small", 0ULL)
        << ", degenerate=" << ex.value("degenerate", 0ULL)
        << ", unconverged=" << ex.value("unconverged", 0ULL)
        << ", no_tail_bins=" << ex.value("no_tail_bins", 0ULL) << ')';
  }
  out << "\n\n";

  if (variant != "tail") {
    render_variant(out, "standard", read_ranks_csv(dir / "ranks_standard.csv"),
                   /*absolute=*/false);
    out << '\n';
  }
  if (variant != "standard") {
    render_variant(out, "tail", read_ranks_csv(dir / "ranks_tail.csv"),
                   /*absolute=*/true);
  }
  return out.str();
}

}  // namespace volmodel
