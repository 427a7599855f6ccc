#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qfilter/io.hpp"
#include "qfilter/tomo.hpp"

namespace qfilter {
namespace {

using io::Json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qfilter");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("qfilter_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(CliCurves, PhaseFlipMatchIsFlat) {
  const auto r = run_cli({"curves", "--noise", "phaseflip", "--strategy", "match", "--normalization", "1.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 61u);
  EXPECT_EQ(rows[0][3], "mutual_info_bits");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NEAR(std::stod(rows[i][3]), 1.3538619241352534, 1e-12);
}

TEST(CliCurves, NoiselessStartsAtTwoBits) {
  const auto r = run_cli({"curves", "--noise", "bitflip", "--p", "0", "--normalization", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(csv_rows(r.out)[1][3]), 2.0, 1e-12);
}

TEST(CliCurves, DefaultNormalizationOnOptimalBitFlip) {
  const auto r = run_cli({"curves", "--noise", "bitflip", "--strategy", "optimal", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = io::parse_json(r.out);
  EXPECT_NEAR(j[0]["mutual_info_bits"].get<double>(), 1.218475731721728, 1e-12);
  EXPECT_EQ(j.size(), 60u);
}

TEST(CliInset, ArgmaxNearClosedForm) {
  const auto r = run_cli({"inset", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = io::parse_json(r.out);
  ASSERT_EQ(j["series"].size(), 3u);
  for (const auto& s : j["series"]) {
    EXPECT_NEAR(s["argmax_ratio"].get<double>(), 0.59, 0.02);
    EXPECT_NEAR(s["argmax_concurrence_ratio"].get<double>(), s["closed_form_ratio"].get<double>(), 1e-3);
  }
  const auto pf = run_cli({"inset", "--noise", "phaseflip", "--gamma-a", "0.857", "--format", "json"});
  ASSERT_EQ(pf.code, 0) << pf.err;
  EXPECT_NEAR(io::parse_json(pf.out)["series"][0]["argmax_ratio"].get<double>(), 1.0, 1e-3);
}

TEST(CliInset, CsvSummaryLines) {
  const auto r = run_cli({"inset", "--gamma-a", "0.857", "--steps", "201"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(csv_rows(r.out).size(), 202u);
  EXPECT_NE(r.out.find("# argmax gamma_a=0.857 ratio="), std::string::npos);
}

TEST(CliOptimize, Examples) {
  const auto pf = run_cli({"optimize", "--noise", "phaseflip"});
  ASSERT_EQ(pf.code, 0) << pf.err;
  EXPECT_EQ(io::parse_json(pf.out)["gamma_b_opt"].get<double>(), 0.857);

  const auto bf = run_cli({"optimize", "--noise", "bitflip", "--gamma-a", "0.857"});
  ASSERT_EQ(bf.code, 0) << bf.err;
  const Json j = io::parse_json(bf.out);
  EXPECT_NEAR(j["gamma_b_opt"].get<double>(), 0.505, 0.005);
  EXPECT_NEAR(j["orientation_b"][2].get<double>(), -1.0, 1e-14);

  const auto zero = run_cli({"optimize", "--gamma-a", "0"});
  ASSERT_EQ(zero.code, 0) << zero.err;
  const Json jz = io::parse_json(zero.out);
  EXPECT_EQ(jz["gamma_b_opt"].get<double>(), 0.0);
  EXPECT_TRUE(jz["ratio"].is_null());
}

TEST(CliTomo, SimulateThenReconstruct) {
  TempDir dir;
  const auto rec = dir.file("phi.json");
  const auto sim = run_cli({"tomo", "simulate", "--state", "phi+", "--seed", "7", "-o", rec});
  ASSERT_EQ(sim.code, 0) << sim.err;
  const auto r = run_cli({"tomo", "reconstruct", "-i", rec});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = io::parse_json(r.out);
  EXPECT_GT(j["fidelity"].get<double>(), 0.99);
  EXPECT_EQ(j["target"], "phi+");
}

TEST(CliTomo, ExactBitFlipWeights) {
  TempDir dir;
  const auto rec = dir.file("bf.json");
  ASSERT_EQ(run_cli({"tomo", "simulate", "--state", "bitflip", "--p", "0.33", "--exact", "--dark-prob", "0", "-o", rec}).code, 0);
  const auto r = run_cli({"tomo", "reconstruct", "-i", rec});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json w = io::parse_json(r.out)["bell_weights"];
  EXPECT_NEAR(w["phi+"].get<double>(), 0.835, 1e-6);
  EXPECT_NEAR(w["psi+"].get<double>(), 0.165, 1e-6);
  EXPECT_TRUE(io::parse_json(r.out)["bell_diagonal"].get<bool>());
}

TEST(CliTomo, ZeroCountsFail) {
  TempDir dir;
  const auto path = dir.file("zero.json");
  Json doc = io::to_json(qfilter::expected_counts(maximally_mixed(4), standard_settings(), 10.0, 0.0));
  for (auto& c : doc["counts"]) c = 0;
  std::ofstream(path) << doc.dump();
  const auto r = run_cli({"tomo", "reconstruct", "-i", path});
  EXPECT_EQ(r.code, cli::kExitRuntime);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(CliErrors, UsageAndRuntime) {
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"curves", "--noise", "depolarizing"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"curves", "--p", "1.5"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"curves", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"tomo", "reconstruct"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"curves", "--help"}).code, cli::kExitOk);
  EXPECT_EQ(run_cli({"curves", "-o", "/nonexistent-dir/x.csv"}).code, cli::kExitRuntime);
  EXPECT_EQ(run_cli({"tomo", "reconstruct", "-i", "/nonexistent-dir/x.json"}).code, cli::kExitRuntime);
}

TEST(CliOutput, ReproducibleBytes) {
  TempDir dir;
  const auto a = dir.file("a.json");
  const auto b = dir.file("b.json");
  ASSERT_EQ(run_cli({"tomo", "simulate", "--state", "bitflip", "--seed", "3", "-o", a}).code, 0);
  ASSERT_EQ(run_cli({"tomo", "simulate", "--state", "bitflip", "--seed", "3", "-o", b}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(run_cli({"curves", "--strategy", "optimal"}).out, run_cli({"curves", "--strategy", "optimal"}).out);
}

TEST(CliBinary, RunsAsProcess) {
  const std::string cmd = std::string(QFILTER_CLI_PATH) + " optimize > /dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  const std::string bad = std::string(QFILTER_CLI_PATH) + " curves --noise nope > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 1);
}

}  // namespace
}  // namespace qfilter
