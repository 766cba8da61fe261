#include <cmath>
#include <cstdlib>
#include <unistd.h>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "expgof/cli.hpp"
#include "expgof/io.hpp"

using namespace expgof;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "expgof");
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

CsvTable parse(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

std::string cell(const CsvTable& t, std::size_t row, const std::string& column) {
  const int c = t.column(column);
  if (c < 0) throw std::runtime_error("missing column " + column);
  return t.rows.at(row).at(static_cast<std::size_t>(c));
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("expgof_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string write(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST(Cli, ParseErrorsExitOne) {
  EXPECT_EQ(run({}).code, kExitValidation);
  EXPECT_EQ(run({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(run({"efficiency", "--bogus"}).code, kExitValidation);
  EXPECT_EQ(run({"efficiency", "--format", "xml"}).code, kExitValidation);
  const CliRun help = run({"power", "--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("--critvals"), std::string::npos);
}

TEST(Cli, ValidationErrorsNameTheFlag) {
  const CliRun stat = run({"critval", "--stat", "XYZ", "--n", "10", "--seed", "1"});
  EXPECT_EQ(stat.code, kExitValidation);
  EXPECT_NE(stat.err.find("--stat"), std::string::npos) << stat.err;
  const CliRun input = run({"test", "--stat", "KS", "--input", "/nonexistent/data.txt", "--seed", "1"});
  EXPECT_EQ(input.code, kExitValidation);
  EXPECT_NE(input.err.find("--input"), std::string::npos) << input.err;
  const CliRun reps = run({"critval", "--stat", "KS", "--n", "10", "--replicates", "100", "--seed", "1"});
  EXPECT_EQ(reps.code, kExitValidation);
  EXPECT_NE(reps.err.find("--replicates"), std::string::npos) << reps.err;
  const CliRun hat = run({"power", "--stat", "KS", "--a", "hat", "--family", "uniform", "--n", "10"});
  EXPECT_EQ(hat.code, kExitValidation);
  EXPECT_NE(hat.err.find("--a"), std::string::npos) << hat.err;
  const CliRun fam = run({"efficiency", "--stat", "EP", "--family", "uniform"});
  EXPECT_EQ(fam.code, kExitValidation);
  EXPECT_NE(fam.err.find("--family"), std::string::npos) << fam.err;
  const CliRun theta = run({"power", "--stat", "MD", "--a", "1", "--family", "gamma", "--n", "10"});
  EXPECT_EQ(theta.code, kExitValidation);
  EXPECT_NE(theta.err.find("--theta"), std::string::npos) << theta.err;
}

TEST(Cli, NumericalFailureExitsTwo) {
  const CliRun r = run({"eigen", "--a", "0.2", "--tol", "1e-12"});
  EXPECT_EQ(r.code, kExitNumerical);
  EXPECT_NE(r.err.find("m=4000"), std::string::npos) << r.err;
}

TEST(Cli, EigenLadderTrace) {
  const CliRun r = run({"eigen", "--a", "1", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_GE(j.size(), 2u);
  EXPECT_EQ(j[0]["kernel"], "md");
  EXPECT_TRUE(j[0]["extrapolated"].is_null());
  EXPECT_GT(j.back()["final"].get<double>(), 0.0);
}

TEST_F(CliFiles, TestOnConstantData) {
  const std::string data = write("const.txt", "# constant sample\n2.5\n2.5\n2.5\n2.5\n2.5\n2.5\n2.5\n2.5\n2.5\n2.5\n");
  const CliRun r = run({"test", "--stat", "MD", "--a", "1", "--input", data, "--seed", "7"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("seed=7"), std::string::npos);
  const CsvTable t = parse(r.out);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_NEAR(std::stod(cell(t, 0, "value")), 1.0 / 30.0, 1e-12);
  EXPECT_EQ(cell(t, 0, "n"), "10");
  const double p = std::stod(cell(t, 0, "p_value"));
  EXPECT_GT(p, 0.0);
  EXPECT_LE(p, 1.0);
  // The same run again is byte identical.
  EXPECT_EQ(run({"test", "--stat", "MD", "--a", "1", "--input", data, "--seed", "7"}).out, r.out);
}

TEST_F(CliFiles, SeedEchoedWhenAbsent) {
  const std::string data = write("x.txt", "0.5\n1.5\n0.2\n2.2\n0.9\n");
  const CliRun r = run({"test", "--stat", "KS", "--input", data});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("seed="), std::string::npos);
  const std::string echoed = r.err.substr(r.err.find("seed=") + 5, r.err.find('\n') - r.err.find("seed=") - 5);
  EXPECT_EQ(cell(parse(r.out), 0, "seed"), echoed);
}

TEST_F(CliFiles, CritvalRoundTripMatchesInProcess) {
  const std::string cv = path("cv.csv");
  const CliRun c = run({"critval", "--stat", "MD", "--a", "0.5,2", "--n", "15", "--replicates", "10000", "--seed", "99",
                     "--output", cv});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  const CsvTable table = [&] {
    std::ifstream in(cv);
    return read_csv(in);
  }();
  EXPECT_EQ(table.rows.size(), 2u);

  const std::vector<std::string> common{"power", "--stat", "MD", "--a", "2", "--family", "gamma", "--theta", "1",
                                        "--n", "15", "--replicates", "2000", "--seed", "5"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = common;
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  };
  const CliRun from_file = with({"--critvals", cv});
  const CliRun in_process = with({"--cal-seed", "99", "--cal-replicates", "10000"});
  ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
  ASSERT_EQ(in_process.code, kExitOk) << in_process.err;
  EXPECT_NE(in_process.err.find("calibrating in-process"), std::string::npos);
  EXPECT_EQ(from_file.out, in_process.out);

  const CliRun missing = with({"--critvals", cv, "--n", "16"});
  EXPECT_EQ(missing.code, kExitValidation);
}

TEST_F(CliFiles, OutputIndependentOfThreads) {
  const std::vector<std::string> base{"power", "--stat", "LD", "--a", "1", "--family", "lognormal", "--theta", "0.8",
                                      "--n", "12", "--replicates", "1500", "--seed", "3"};
  auto with = [&](const std::string& threads) {
    std::vector<std::string> args = base;
    args.insert(args.end(), {"--threads", threads});
    return run(args);
  };
  const CliRun one = with("1"), three = with("3");
  ASSERT_EQ(one.code, kExitOk) << one.err;
  EXPECT_EQ(one.out, three.out);
}

TEST(Cli, EfficiencyAdWeibull) {
  const CliRun r = run({"efficiency", "--stat", "AD", "--family", "weibull"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const CsvTable t = parse(r.out);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_NEAR(std::stod(cell(t, 0, "efficiency")), 0.909, 0.03);
  EXPECT_EQ(cell(t, 0, "a"), "NA");
}

TEST(Cli, PowerLdUniform) {
  const CliRun r = run({"power", "--stat", "LD", "--a", "2", "--family", "uniform", "--n", "20", "--replicates", "2000",
                     "--seed", "2026", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_NEAR(j[0]["power"].get<double>(), 0.71, 0.045);
  EXPECT_EQ(j[0]["replicates"].get<double>(), 2000.0);
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = EXPGOF_CLI_PATH;
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " efficiency --stat CO --family weibull > /dev/null 2>&1").c_str())), 0);
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " efficiency --stat NOPE > /dev/null 2>&1").c_str())), 1);
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " eigen --a 0.2 --tol 1e-12 > /dev/null 2>&1").c_str())), 2);
}
