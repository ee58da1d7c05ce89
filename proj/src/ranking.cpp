#include "volmodel/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "volmodel/errors.hpp"
#include "volmodel/time_util.hpp"

namespace volmodel {

const char* variant_name(DistanceVariant v) {
  return v == DistanceVariant::Standard ? "standard" : "tail";
}

WindowRanking rank_window(std::span<const DistanceReport> reports,
                          DistanceVariant variant) {
  if (reports.size() != kAllModels.size())
    throw std::invalid_argument("rank_window: expected one report per model");
  std::array<const DistanceReport*, 4> by_kind{};
  for (const auto& rep : reports) {
    auto& slot = by_kind[model_index(rep.kind)];
    if (slot != nullptr)
      throw std::invalid_argument(std::string("rank_window: duplicate model ") +
                                  model_name(rep.kind));
    slot = &rep;
  }
  for (std::size_t i = 0; i < by_kind.size(); ++i)
    if (by_kind[i] == nullptr)
      throw std::invalid_argument(std::string("rank_window: missing model ") +
                                  model_name(kAllModels[i]));

  WindowRanking out;
  out.window_start = reports.front().window_start;
  std::array<std::size_t, 4> order = {0, 1, 2, 3};
  auto key = [&](std::size_t idx) {
    const DistanceReport* rep = by_kind[idx];
    return std::fabs(variant == DistanceVariant::Standard ? rep->d_standard
                                                          : rep->d_tail);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  for (std::size_t r = 0; r < order.size(); ++r) {
    const DistanceReport* rep = by_kind[order[r]];
    out.entries[r] = {rep->kind, static_cast<int>(r + 1),
                      variant == DistanceVariant::Standard ? rep->d_standard
                                                           : rep->d_tail};
  }
  return out;
}

RankMatrix aggregate(std::span<const WindowRanking> rankings) {
  if (rankings.empty())
    throw std::invalid_argument("aggregate: no ranked windows");
  RankMatrix m;
  m.windows = rankings.size();
  std::array<std::array<std::size_t, 4>, 4> counts{};
  for (const auto& win : rankings)
    for (const auto& entry : win.entries)
      ++counts[model_index(entry.kind)][entry.rank - 1];
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t r = 0; r < 4; ++r)
      m.pct[i][r] =
          100.0 * static_cast<double>(counts[i][r]) / static_cast<double>(m.windows);
  return m;
}

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

struct Histogram {
  std::vector<double> left, right;
  std::vector<std::size_t> count;
};

// Linear histogram over [min, max]; a zero-spread input collapses to one
// unit-width bin around the value.
Histogram make_histogram(std::span<const double> values, int bins) {
  Histogram h;
  if (values.empty()) return h;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  int n = bins;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
    n = 1;
  }
  h.left.resize(n);
  h.right.resize(n);
  h.count.assign(n, 0);
  const double width = (hi - lo) / n;
  for (int i = 0; i < n; ++i) {
    h.left[i] = lo + width * i;
    h.right[i] = i + 1 == n ? hi : lo + width * (i + 1);
  }
  for (double v : values) {
    int idx = static_cast<int>((v - lo) / width);
    idx = std::clamp(idx, 0, n - 1);
    ++h.count[idx];
  }
  return h;
}

void write_histogram_rows(std::ofstream& out, const std::string& label,
                          const Histogram& h, std::size_t total) {
  for (std::size_t i = 0; i < h.count.size(); ++i) {
    const double width = h.right[i] - h.left[i];
    const double density =
        static_cast<double>(h.count[i]) / (static_cast<double>(total) * width);
    out << label << ',' << fmt_double(h.left[i]) << ',' << fmt_double(h.right[i])
        << ',' << h.count[i] << ',' << fmt_double(density) << '\n';
  }
}

}  // namespace

void export_series(const std::filesystem::path& out_dir,
                   std::span<const SeriesEntry> fits,
                   std::span<const DistanceReport> reports, int histogram_bins,
                   bool include_tail) {
  if (histogram_bins < 1)
    throw std::invalid_argument("histogram_bins must be >= 1");

  for (ModelKind kind : kAllModels) {
    const std::string name = model_name(kind);

    auto params_csv = open_out(out_dir / ("params_" + name + ".csv"));
    params_csv << "window_start,phi,theta\n";
    std::vector<double> dphi, dtheta;
    for (const auto& entry : fits) {
      if (entry.fit.kind != kind || !entry.fit.converged) continue;
      params_csv << format_iso8601_utc(entry.window_start) << ','
                 << fmt_double(entry.fit.params.phi) << ','
                 << fmt_double(entry.fit.params.theta) << '\n';
      if (std::isfinite(entry.fit.rel_err_phi)) dphi.push_back(entry.fit.rel_err_phi);
      if (std::isfinite(entry.fit.rel_err_theta))
        dtheta.push_back(entry.fit.rel_err_theta);
    }

    auto errors_csv = open_out(out_dir / ("errors_" + name + ".csv"));
    errors_csv << "param,bin_left,bin_right,count,density\n";
    write_histogram_rows(errors_csv, "phi", make_histogram(dphi, histogram_bins),
                         dphi.size());
    write_histogram_rows(errors_csv, "theta",
                         make_histogram(dtheta, histogram_bins), dtheta.size());
  }

  auto dist_std = open_out(out_dir / "dist_standard.csv");
  dist_std << "model,bin_left,bin_right,count,density\n";
  for (ModelKind kind : kAllModels) {
    std::vector<double> values;
    for (const auto& rep : reports)
      if (rep.kind == kind && std::isfinite(rep.d_standard))
        values.push_back(rep.d_standard);
    write_histogram_rows(dist_std, model_name(kind),
                         make_histogram(values, histogram_bins), values.size());
  }

  if (!include_tail) return;
  auto dist_tail = open_out(out_dir / "dist_tail.csv");
  dist_tail << "model,bin_left,bin_right,count,density\n";
  for (ModelKind kind : kAllModels) {
    std::vector<double> values;
    for (const auto& rep : reports)
      if (rep.kind == kind && std::isfinite(rep.d_tail))
        values.push_back(std::fabs(rep.d_tail));
    write_histogram_rows(dist_tail, model_name(kind),
                         make_histogram(values, histogram_bins), values.size());
  }
}

void write_ranks_csv(const std::filesystem::path& path,
                     std::span<const WindowRanking> rankings) {
  auto out = open_out(path);
  out << "window_start";
  for (ModelKind kind : kAllModels) out << ",rank_" << model_name(kind);
  for (ModelKind kind : kAllModels) out << ",d_" << model_name(kind);
  out << '\n';
  for (const auto& win : rankings) {
    std::array<int, 4> rank_by_model{};
    std::array<double, 4> dist_by_model{};
    for (const auto& entry : win.entries) {
      rank_by_model[model_index(entry.kind)] = entry.rank;
      dist_by_model[model_index(entry.kind)] = entry.distance;
    }
    out << format_iso8601_utc(win.window_start);
    for (int r : rank_by_model) out << ',' << r;
    for (double d : dist_by_model) out << ',' << fmt_double(d);
    out << '\n';
  }
}

}  // namespace volmodel
