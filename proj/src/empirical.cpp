#include "volmodel/empirical.hpp"

#include <zlib.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "volmodel/errors.hpp"
#include "volmodel/log.hpp"
#include "volmodel/time_util.hpp"

namespace volmodel {

double volume_price(double price, double volume) {
  if (!(price > 0.0) || !std::isfinite(price))
    throw std::domain_error("volume_price: price must be > 0");
  if (!(volume >= 0.0) || !std::isfinite(volume))
    throw std::domain_error("volume_price: volume must be >= 0");
  return price * volume;
}

namespace {

std::string read_plain_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

std::string read_gzip_file(const std::string& path) {
  gzFile gz = gzopen(path.c_str(), "rb");
  if (gz == nullptr) throw std::runtime_error("cannot open " + path);
  std::string out;
  char chunk[1 << 16];
  int got;
  while ((got = gzread(gz, chunk, sizeof(chunk))) > 0) out.append(chunk, got);
  const bool bad = got < 0;
  gzclose(gz);
  if (bad) throw std::runtime_error("gzip read error in " + path);
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool split4(std::string_view line, std::string_view out[4]) {
  std::size_t field = 0, start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      if (field >= 4) return false;
      out[field++] = trim(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return field == 4;
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  std::string tmp(text);
  char* end = nullptr;
  errno = 0;
  out = std::strtod(tmp.c_str(), &end);
  return errno == 0 && end == tmp.c_str() + tmp.size() && std::isfinite(out);
}

bool parse_int64(std::string_view text, long long& out) {
  if (text.empty()) return false;
  std::string tmp(text);
  char* end = nullptr;
  errno = 0;
  out = std::strtoll(tmp.c_str(), &end, 10);
  return errno == 0 && end == tmp.c_str() + tmp.size();
}

}  // namespace

std::vector<WindowSnapshot> parse_snapshots(std::string_view csv_text,
                                            int window_minutes, LoadStats* stats,
                                            const std::string& origin) {
  if (window_minutes < 1)
    throw std::invalid_argument("window_minutes must be >= 1");

  LoadStats local;
  const std::int64_t window_seconds = static_cast<std::int64_t>(window_minutes) * 60;
  std::map<std::int64_t, WindowSnapshot> windows;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool saw_header = false;
  while (pos <= csv_text.size()) {
    const std::size_t eol = csv_text.find('\n', pos);
    std::string_view line = csv_text.substr(
        pos, eol == std::string_view::npos ? csv_text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? csv_text.size() + 1 : eol + 1;
    ++line_no;
    if (trim(line).empty()) continue;

    if (!saw_header) {
      std::string_view fields[4];
      if (!split4(line, fields) || fields[0] != "timestamp" ||
          fields[1] != "ticker" || fields[2] != "price" || fields[3] != "volume")
        throw ParseError(origin + ":" + std::to_string(line_no) +
                         ": expected header `timestamp,ticker,price,volume`");
      saw_header = true;
      continue;
    }

    std::string_view fields[4];
    if (!split4(line, fields))
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": expected 4 comma-separated fields");
    std::int64_t ts;
    try {
      ts = parse_iso8601_utc(fields[0]);
    } catch (const ParseError& e) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (fields[1].empty())
      throw ParseError(origin + ":" + std::to_string(line_no) + ": empty ticker");
    double price;
    if (!parse_double(fields[2], price))
      throw ParseError(origin + ":" + std::to_string(line_no) + ": bad price `" +
                       std::string(fields[2]) + "`");
    long long volume;
    if (!parse_int64(fields[3], volume))
      throw ParseError(origin + ":" + std::to_string(line_no) + ": bad volume `" +
                       std::string(fields[3]) + "`");

    ++local.rows;
    if (price <= 0.0 || volume <= 0) {
      // zero-volume / non-positive-price records carry no volume-price mass
      ++local.dropped;
      logging::debugf("%s:%zu: dropped record (price=%g volume=%lld)",
                      origin.c_str(), line_no, price, volume);
      continue;
    }

    const std::int64_t start =
        floor_div(ts, window_seconds) * window_seconds;
    auto& win = windows[start];
    win.window_start = start;
    win.samples.push_back(volume_price(price, static_cast<double>(volume)));
  }

  if (!saw_header) throw ParseError(origin + ": empty file (missing header)");
  if (local.dropped > 0)
    logging::warnf("%s: dropped %zu of %zu records (zero volume or bad price)",
                   origin.c_str(), local.dropped, local.rows);
  if (windows.empty())
    throw EmptyResultError(origin + ": no valid record found");

  std::vector<WindowSnapshot> out;
  out.reserve(windows.size());
  for (auto& [start, win] : windows) out.push_back(std::move(win));
  if (stats != nullptr) *stats = local;
  return out;
}

std::vector<WindowSnapshot> load_snapshots(const std::string& path,
                                           int window_minutes, LoadStats* stats) {
  const bool gz = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
  const std::string text = gz ? read_gzip_file(path) : read_plain_file(path);
  return parse_snapshots(text, window_minutes, stats, path);
}

EmpiricalDistribution build_empirical(std::span<const double> samples,
                                      int bins_per_decade,
                                      std::size_t min_samples) {
  if (bins_per_decade < 1)
    throw std::invalid_argument("bins_per_decade must be >= 1");
  if (samples.size() < min_samples)
    throw InsufficientSamplesError("window has " + std::to_string(samples.size()) +
                                   " samples, need >= " +
                                   std::to_string(min_samples));
  for (double s : samples)
    if (!(s > 0.0) || !std::isfinite(s))
      throw std::domain_error("samples must be > 0 and finite");

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double lo = sorted.front();
  const double hi = sorted.back();
  if (lo == hi)
    throw DegenerateSampleError("all samples equal (" + std::to_string(lo) + ")");

  EmpiricalDistribution emp;
  emp.n = n;
  emp.median = (n % 2 == 1) ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  // ECDF at unique values; tied samples share the highest step.
  emp.ecdf.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n && sorted[i + 1] == sorted[i]) continue;
    emp.ecdf.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }

  // Log-spaced bins: bins_per_decade per decade between min and max sample.
  const double ln_lo = std::log(lo);
  const double ln_hi = std::log(hi);
  const double decades = (ln_hi - ln_lo) / std::log(10.0);
  const std::size_t n_bins = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(decades * bins_per_decade - 1e-9)));
  std::vector<double> edges(n_bins + 1);
  for (std::size_t i = 0; i <= n_bins; ++i)
    edges[i] = std::exp(ln_lo + (ln_hi - ln_lo) * static_cast<double>(i) /
                                    static_cast<double>(n_bins));
  edges.front() = lo;
  edges.back() = hi;

  emp.bins.resize(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) {
    emp.bins[i].left = edges[i];
    emp.bins[i].right = edges[i + 1];
    emp.bins[i].width = edges[i + 1] - edges[i];
    if (!(emp.bins[i].width > 0.0))
      throw DegenerateSampleError("zero-width histogram bin (samples too close)");
  }
  std::size_t b = 0;
  for (double s : sorted) {
    while (b + 1 < n_bins && s >= edges[b + 1]) ++b;
    ++emp.bins[b].count;
  }
  for (auto& bin : emp.bins)
    bin.density = static_cast<double>(bin.count) /
                  (static_cast<double>(n) * bin.width);
  return emp;
}

}  // namespace volmodel
