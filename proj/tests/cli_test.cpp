#include "geomax/cli.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "geomax/geodesic.hpp"
#include "json.hpp"
#include "test_support.hpp"

namespace geomax::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr const char* kCosDocument =
    R"({"coefficients": [{"k": [1, 0], "re": 0.5, "im": 0}]})";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("geomax_cli_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) const {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  // Runs the installed binary; returns its exit status.
  int run_binary(const std::string& args) const {
    const std::string cmd = std::string(GEOMAX_CLI_PATH) + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

RunConfig sine_config(Command c, int ell) {
  RunConfig cfg;
  cfg.command = c;
  cfg.preset = "sine";
  cfg.ell = ell;
  return cfg;
}

TEST_F(CliTest, AnalyzeSineFive) {
  const auto r = run(sine_config(Command::analyze, 5));
  ASSERT_EQ(r.exit_code, kExitOk) << r.error;
  const auto doc = json::parse(r.document);
  EXPECT_EQ(doc["extremal"]["direction"], json::array({5, -1}));
  EXPECT_NEAR(doc["extremal"]["value"].get<double>(), 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(doc["extremal"]["length"].get<double>(), std::sqrt(26.0));

  std::vector<std::string> keys;
  for (const auto& item : doc.items()) keys.push_back(item.key());
  // nlohmann::json sorts keys on parse; check presence and the raw order.
  EXPECT_EQ(keys.size(), 5u);
  EXPECT_LT(r.document.find("\"input\""), r.document.find("\"norms\""));
  EXPECT_LT(r.document.find("\"norms\""), r.document.find("\"bound\""));
  EXPECT_LT(r.document.find("\"bound\""), r.document.find("\"extremal\""));
  EXPECT_LT(r.document.find("\"extremal\""), r.document.find("\"meta\""));
}

TEST_F(CliTest, AnalyzeIsSmoothnessIndependent) {
  auto cfg = sine_config(Command::analyze, 1);
  const auto two = json::parse(run(cfg).document);
  cfg.s = 3;
  const auto three = json::parse(run(cfg).document);
  EXPECT_EQ(three["bound"]["s"], 3);
  EXPECT_TRUE(three["norms"]["deriv_l1"].contains("3"));
  EXPECT_EQ(two["extremal"]["direction"], three["extremal"]["direction"]);
  EXPECT_EQ(two["extremal"]["theta"], three["extremal"]["theta"]);
}

TEST_F(CliTest, AnalyzeFileInput) {
  RunConfig cfg;
  cfg.command = Command::analyze;
  cfg.input = write("cos.json", kCosDocument).string();
  const auto r = run(cfg);
  ASSERT_EQ(r.exit_code, kExitOk) << r.error;
  const auto doc = json::parse(r.document);
  EXPECT_EQ(doc["extremal"]["direction"], json::array({0, 1}));
  EXPECT_NEAR(doc["extremal"]["value"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(doc["input"]["source"], "file");
}

TEST_F(CliTest, AnalyzeZeroField) {
  RunConfig cfg;
  cfg.command = Command::analyze;
  cfg.input = write("zero.json", R"({"coefficients": []})").string();
  const auto r = run(cfg);
  ASSERT_EQ(r.exit_code, kExitOk) << r.error;
  const auto doc = json::parse(r.document);
  EXPECT_TRUE(doc["bound"].is_null());
  EXPECT_EQ(doc["extremal"]["direction"], json::array({1, 0}));
  EXPECT_EQ(doc["extremal"]["value"], 0.0);
}

TEST_F(CliTest, DeterministicReport) {
  RunConfig cfg;
  cfg.command = Command::analyze;
  cfg.preset = "random";
  cfg.n = 5;
  cfg.seed = 77;
  EXPECT_EQ(run(cfg).document, run(cfg).document);
}

TEST_F(CliTest, VerifyPresets) {
  RunConfig cfg;
  cfg.command = Command::verify;
  cfg.preset = "random";
  cfg.n = 8;
  cfg.decay = 1.0;
  cfg.seed = 2;
  auto r = run(cfg);
  ASSERT_EQ(r.exit_code, kExitOk) << r.error;
  auto doc = json::parse(r.document);
  EXPECT_EQ(doc["verification"]["passed_count"], 6);
  EXPECT_TRUE(doc["verification"]["passed"].get<bool>());

  r = run(sine_config(Command::verify, 3));
  EXPECT_EQ(r.exit_code, kExitOk);
  doc = json::parse(r.document);
  EXPECT_EQ(doc["verification"]["checks"].size(), 6u);
}

TEST_F(CliTest, ConfigErrors) {
  RunConfig cfg;
  cfg.command = Command::analyze;
  EXPECT_EQ(run(cfg).exit_code, kExitInvalidInput);  // no input
  cfg.preset = "sine";
  cfg.input = "x.json";
  EXPECT_EQ(run(cfg).exit_code, kExitInvalidInput);  // both
  cfg.input.reset();
  cfg.s = 1;
  EXPECT_EQ(run(cfg).exit_code, kExitInvalidInput);
  cfg.s = 2;
  cfg.preset = "square";
  EXPECT_EQ(run(cfg).exit_code, kExitInvalidInput);

  RunConfig missing;
  missing.command = Command::verify;
  missing.input = (dir_ / "absent.json").string();
  EXPECT_EQ(run(missing).exit_code, kExitIoError);

  RunConfig bad;
  bad.command = Command::verify;
  bad.input = write("bad.json", "{\"coefficients\": [{\"k\": [0, 0], \"re\": 1}]}").string();
  EXPECT_EQ(run(bad).exit_code, kExitInvalidInput);
}

TEST_F(CliTest, SweepTable) {
  RunConfig cfg;
  cfg.command = Command::sweep;
  cfg.ell_min = 1;
  cfg.ell_max = 12;
  const auto r = run(cfg);
  ASSERT_EQ(r.exit_code, kExitOk) << r.error;

  std::istringstream in(r.document);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "ell,extremal_length,theorem_radius,cutoff_radius,deriv_l1_s,grad_l2,l2");
  int ell = 0;
  while (std::getline(in, line)) {
    ++ell;
    std::vector<double> cells;
    std::stringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(std::stod(cell));
    ASSERT_EQ(cells.size(), 7u);
    EXPECT_EQ(cells[0], ell);
    EXPECT_DOUBLE_EQ(cells[1], std::sqrt(1.0 + ell * ell));
    if (ell >= 5) EXPECT_LE(std::abs(cells[1] - ell) / ell, 0.02);
    // deriv_l1(2) / ell^2 -> (2 pi)^2 (2 / pi) = 8 pi
    EXPECT_NEAR(cells[4] / (ell * ell) / (8.0 * testing::kPi), 1.0, 1e-3);
  }
  EXPECT_EQ(ell, 12);
}

TEST_F(CliTest, SweepEmptyRange) {
  RunConfig cfg;
  cfg.command = Command::sweep;
  cfg.ell_min = 5;
  cfg.ell_max = 4;
  EXPECT_EQ(run(cfg).document,
            "ell,extremal_length,theorem_radius,cutoff_radius,deriv_l1_s,grad_l2,l2\n");
}

TEST_F(CliTest, EnumerateRows) {
  RunConfig cfg;
  cfg.command = Command::enumerate;
  cfg.radius_override = 1.0;
  const auto one = run(cfg).document;
  EXPECT_EQ(one.substr(0, one.find('#')), "a,b,length\n0,1,1\n1,0,1\n");

  cfg.radius_override = 5.0;
  std::istringstream in(run(cfg).document);
  std::string line;
  std::getline(in, line);
  std::set<std::pair<int, int>> rows;
  while (std::getline(in, line) && line[0] != '#') {
    std::stringstream row(line);
    std::string a, b;
    std::getline(row, a, ',');
    std::getline(row, b, ',');
    rows.insert({std::stoi(a), std::stoi(b)});
  }
  EXPECT_EQ(rows, testing::gcd_scan(25));
}

TEST_F(CliTest, EnumerateDensity) {
  RunConfig cfg;
  cfg.command = Command::enumerate;
  cfg.radius_override = 100.0;
  const auto doc = run(cfg).document;
  const auto pos = doc.find("density=");
  ASSERT_NE(pos, std::string::npos);
  const double density = std::stod(doc.substr(pos + 8));
  EXPECT_NEAR(density / 0.6079271018540267, 1.0, 0.05);
}

TEST_F(CliTest, TablePath) {
  EXPECT_EQ(table_path_for("out.json"), "out.directions.csv");
  EXPECT_EQ(table_path_for("dir.v1/out"), "dir.v1/out.directions.csv");
  EXPECT_EQ(table_path_for("a/b.c/r.json"), "a/b.c/r.directions.csv");
}

TEST_F(CliTest, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0, std::sqrt(26.0), 1e-300, 123456789.125}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(1.0), "1");
}

TEST_F(CliTest, BinaryAnalyzeWithTable) {
  const auto out = dir_ / "out.json";
  ASSERT_EQ(run_binary("analyze --preset sine --ell 5 --keep-table -o " + out.string()),
            kExitOk);
  const auto doc = json::parse(slurp(out));
  EXPECT_EQ(doc["extremal"]["direction"], json::array({5, -1}));
  const auto csv = slurp(dir_ / "out.directions.csv");
  EXPECT_EQ(csv.rfind("a,b,length,theta_star,value\n", 0), 0u);
  EXPECT_NE(csv.find("\n5,-1,"), std::string::npos);
}

TEST_F(CliTest, BinaryExitCodes) {
  EXPECT_EQ(run_binary("verify --preset sine --ell 3"), kExitOk);
  const auto bad = write("malformed.json", "{\"coefficients\": [{\"k\": [1]}]");
  EXPECT_EQ(run_binary("verify -i " + bad.string()), kExitInvalidInput);
  EXPECT_EQ(run_binary("analyze -i " + (dir_ / "nope.json").string()), kExitIoError);
  EXPECT_EQ(run_binary("analyze --preset sine --ell 2 -o /nonexistent-dir/out.json"),
            kExitIoError);
  EXPECT_EQ(run_binary("analyze --bogus"), kExitInvalidInput);
  EXPECT_EQ(run_binary("enumerate --radius 1"), kExitOk);
  EXPECT_EQ(slurp(dir_ / "stdout.txt").rfind("a,b,length\n0,1,1\n1,0,1\n#", 0), 0u);
}

TEST_F(CliTest, GoldenReports) {
  const fs::path golden = GEOMAX_GOLDEN_DIR;
  EXPECT_EQ(run(sine_config(Command::analyze, 2)).document,
            slurp(golden / "analyze_sine_2.json"));
  RunConfig cfg;
  cfg.command = Command::enumerate;
  cfg.radius_override = 5.0;
  EXPECT_EQ(run(cfg).document, slurp(golden / "enumerate_5.csv"));
}

}  // namespace
}  // namespace geomax::cli
