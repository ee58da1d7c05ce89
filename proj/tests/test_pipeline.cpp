#include "volmodel/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <doctest.h>

#include "volmodel/errors.hpp"
#include "volmodel/synth.hpp"

using namespace volmodel;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string make_stream(const fs::path& dir, std::size_t windows,
                        std::size_t samples, std::uint64_t seed,
                        ModelKind kind = ModelKind::LogNormal,
                        ModelParams params = {0.0, 1.0}) {
  SynthSpec spec;
  spec.schedule.assign(windows, {kind, params});
  spec.samples_per_window = samples;
  spec.seed = seed;
  const fs::path csv = dir / "snapshots.csv";
  write_snapshot_csv(csv, generate(spec));
  return csv.string();
}

std::map<std::string, std::string> read_files(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    out[entry.path().filename().string()] = buf.str();
  }
  return out;
}

}  // namespace

TEST_CASE("run_fit end to end on a small lognormal stream") {
  TempDir tmp("volmodel_pipeline_e2e");
  const std::string input = make_stream(tmp.path, 10, 600, 5);
  RunConfig config;
  config.input = input;
  config.out_dir = (tmp.path / "run").string();
  config.jobs = 2;
  const RunResult result = run_fit(config);

  CHECK(result.windows_total == 10);
  CHECK(result.ranked_standard == 10);
  REQUIRE(result.matrix_standard.has_value());
  // lognormal dominates rank 1 on its own data
  CHECK(result.matrix_standard->pct[model_index(ModelKind::LogNormal)][0] >= 80.0);

  for (const char* name :
       {"params_gamma.csv", "params_inverse_gamma.csv", "params_lognormal.csv",
        "params_weibull.csv", "errors_gamma.csv", "dist_standard.csv",
        "dist_tail.csv", "ranks_standard.csv", "ranks_tail.csv", "summary.json"})
    CHECK(fs::exists(tmp.path / "run" / name));

  // ranks csv: one row per ranked window
  std::ifstream ranks(tmp.path / "run" / "ranks_standard.csv");
  std::string line;
  int rows = -1;  // header
  while (std::getline(ranks, line)) ++rows;
  CHECK(rows == 10);

  const std::string summary = read_files(tmp.path / "run")["summary.json"];
  CHECK(summary.find("\"windows_total\": 10") != std::string::npos);
  CHECK(summary.find("\"jobs\"") == std::string::npos);  // jobs never echoed
}

TEST_CASE("artifacts are byte-identical at any parallelism degree") {
  TempDir tmp("volmodel_pipeline_jobs");
  const std::string input = make_stream(tmp.path, 6, 200, 99);
  RunConfig config;
  config.input = input;
  for (int jobs : {1, 2, 4}) {
    config.jobs = jobs;
    config.out_dir = (tmp.path / ("run" + std::to_string(jobs))).string();
    run_fit(config);
  }
  const auto a = read_files(tmp.path / "run1");
  const auto b = read_files(tmp.path / "run2");
  const auto c = read_files(tmp.path / "run4");
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == c.size());
  for (const auto& [name, bytes] : a) {
    INFO(name);
    CHECK(b.at(name) == bytes);
    CHECK(c.at(name) == bytes);
  }
}

TEST_CASE("rerunning reproduces identical artifacts") {
  TempDir tmp("volmodel_pipeline_idem");
  const std::string input = make_stream(tmp.path, 4, 150, 123);
  RunConfig config;
  config.input = input;
  config.out_dir = (tmp.path / "run_a").string();
  run_fit(config);
  config.out_dir = (tmp.path / "run_b").string();
  run_fit(config);
  auto a = read_files(tmp.path / "run_a");
  auto b = read_files(tmp.path / "run_b");
  REQUIRE(a.size() == b.size());
  for (const auto& [name, bytes] : a) {
    INFO(name);
    CHECK(b.at(name) == bytes);
  }
}

TEST_CASE("windows below min_samples are excluded; all excluded is empty") {
  TempDir tmp("volmodel_pipeline_small");
  const std::string input = make_stream(tmp.path, 3, 40, 7);
  RunConfig config;
  config.input = input;
  config.out_dir = (tmp.path / "run").string();
  config.min_samples = 64;  // every window is too small
  CHECK_THROWS_AS(run_fit(config), EmptyResultError);

  config.min_samples = 32;
  const RunResult ok = run_fit(config);
  CHECK(ok.ranked_standard == 3);
}

TEST_CASE("variant selection controls the artifacts") {
  TempDir tmp("volmodel_pipeline_variant");
  const std::string input = make_stream(tmp.path, 3, 150, 17);
  RunConfig config;
  config.input = input;
  config.out_dir = (tmp.path / "std_only").string();
  config.variant = VariantSelection::Standard;
  const RunResult result = run_fit(config);
  CHECK(result.ranked_standard == 3);
  CHECK(result.ranked_tail == 0);
  CHECK(fs::exists(tmp.path / "std_only" / "ranks_standard.csv"));
  CHECK(!fs::exists(tmp.path / "std_only" / "ranks_tail.csv"));
  CHECK(!fs::exists(tmp.path / "std_only" / "dist_tail.csv"));
}

TEST_CASE("summarize mentions the headline numbers") {
  TempDir tmp("volmodel_pipeline_summary");
  const std::string input = make_stream(tmp.path, 3, 150, 29);
  RunConfig config;
  config.input = input;
  config.out_dir = (tmp.path / "run").string();
  const RunResult result = run_fit(config);
  const std::string text = summarize(result);
  CHECK(text.find("windows processed: 3") != std::string::npos);
  CHECK(text.find("rank-1 percentage (standard)") != std::string::npos);
  CHECK(text.find("lognormal=") != std::string::npos);
}

TEST_CASE("report_from_dir renders matrices and flags missing artifacts") {
  TempDir tmp("volmodel_pipeline_report");
  const std::string input = make_stream(tmp.path, 4, 150, 31);
  RunConfig config;
  config.input = input;
  config.out_dir = (tmp.path / "run").string();
  run_fit(config);

  const std::string report = report_from_dir(config.out_dir);
  CHECK(report.find("accuracy ranking (standard), 4 windows") != std::string::npos);
  CHECK(report.find("accuracy ranking (tail)") != std::string::npos);
  CHECK(report.find("lognormal") != std::string::npos);
  CHECK(report.find("distance statistics") != std::string::npos);

  fs::remove(tmp.path / "run" / "ranks_tail.csv");
  CHECK_THROWS_WITH_AS(report_from_dir(config.out_dir),
                       doctest::Contains("ranks_tail.csv"),
                       MissingArtifactError);
  CHECK_THROWS_AS(report_from_dir((tmp.path / "nothing").string()),
                  MissingArtifactError);
}

TEST_CASE("run_fit surfaces parse errors") {
  TempDir tmp("volmodel_pipeline_badinput");
  const fs::path bad = tmp.path / "bad.csv";
  std::ofstream(bad) << "timestamp,ticker,price,volume\ngarbage row\n";
  RunConfig config;
  config.input = bad.string();
  config.out_dir = (tmp.path / "run").string();
  CHECK_THROWS_AS(run_fit(config), ParseError);
}
