#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SPECDIS_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

Table parse_csv(const std::string& text) {
  Table t;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind("# ", 0) == 0) {
      t.comments.push_back(line.substr(2));
    } else if (t.header.empty()) {
      t.header = split(line);
    } else {
      std::vector<double> row;
      for (const auto& c : split(line)) row.push_back(std::stod(c));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("specdis_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, SimulateSchema) {
  const auto r = run("simulate --t-max 5 --obs n0 --obs parity --obs nlast --no-timestamp -o -");
  ASSERT_EQ(r.code, 0);
  const auto t = parse_csv(r.out);
  EXPECT_EQ(t.header, (std::vector<std::string>{"t", "n0", "parity", "nlast"}));
  EXPECT_EQ(t.comments.front(), "specdis simulate");
  ASSERT_EQ(t.rows.size(), 51u);
  EXPECT_EQ(t.rows[0][1], 1.0);
  EXPECT_EQ(t.rows[0][2], 1.0);
}

TEST(Cli, DecoupledChainKeepsSiteZero) {
  const auto r = run("simulate --C 0 --t-max 10 --no-timestamp -o -");
  ASSERT_EQ(r.code, 0);
  const auto t = parse_csv(r.out);
  for (const auto& row : t.rows) EXPECT_EQ(row[1], 1.0);
  bool decoupled = false;
  for (const auto& c : t.comments) decoupled |= c.find("branch=decoupled") != std::string::npos;
  EXPECT_TRUE(decoupled);
}

TEST(Cli, HeatmapReportsBoundaryTime) {
  const auto r = run("simulate --sites 80 --t-max 60 --dt 0.2 --heatmap --no-timestamp -o -");
  ASSERT_EQ(r.code, 0);
  const auto t = parse_csv(r.out);
  EXPECT_EQ(t.header, (std::vector<std::string>{"t", "j", "n"}));
  EXPECT_EQ(t.rows.size(), 301u * 80u);
  std::string boundary;
  for (const auto& c : t.comments)
    if (c.rfind("boundary_time=", 0) == 0) boundary = c.substr(14);
  ASSERT_FALSE(boundary.empty());
  EXPECT_NEAR(std::stod(boundary), 40.0, 5.0);
}

TEST(Cli, OutputIsDeterministicWithoutTimestamp) {
  const std::string args = "simulate --mu 1.4 --t-max 20 --obs n0 --obs parity --no-timestamp -o -";
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto c = run("simulate --mu 1.4 --t-max 20 --threads 1 -o -");
  bool stamped = false;
  for (const auto& line : parse_csv(c.out).comments) stamped |= line.rfind("generated ", 0) == 0;
  EXPECT_TRUE(stamped);
}

TEST(Cli, PhaseDiagramFlipsAtKnownBoundaries) {
  const auto r = run("phase-diagram --mu-range=-1.5:1.5:0.01 --c-range 1:1:1 --no-timestamp -o -");
  ASSERT_EQ(r.code, 0);
  const auto t = parse_csv(r.out);
  EXPECT_EQ(t.header, (std::vector<std::string>{"mu_B", "C_B", "decays", "n_bound", "trapped_weight"}));
  ASSERT_EQ(t.rows.size(), 301u);
  for (const auto& row : t.rows) {
    EXPECT_EQ(row[2], std::abs(row[0]) < 1.0 - 1e-9 ? 1.0 : 0.0) << row[0];
  }
  const auto c = run("phase-diagram --mu-range 0:0:1 --c-range 0.01:2:0.01 --no-timestamp -o -");
  ASSERT_EQ(c.code, 0);
  for (const auto& row : parse_csv(c.out).rows) {
    EXPECT_EQ(row[2], row[1] < std::sqrt(2.0) ? 1.0 : 0.0) << row[1];
  }
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto cfg = scratch("cfg.json");
  std::ofstream(cfg) << R"({"simulate": {"mu": 2.1, "t-max": 3, "dt": 1}})";
  const auto r = run("--config " + cfg.string() + " simulate --dt 0.5 --no-timestamp -o -");
  ASSERT_EQ(r.code, 0);
  const auto t = parse_csv(r.out);
  EXPECT_EQ(t.rows.size(), 7u);
  bool saw_mu = false;
  for (const auto& c : t.comments) saw_mu |= c.find("mu=2.1") != std::string::npos;
  EXPECT_TRUE(saw_mu);
}

TEST(Cli, ConfigurationErrorsExitWithTwo) {
  EXPECT_EQ(run("simulate --B -1 -o -").code, 2);
  EXPECT_EQ(run("simulate --C -0.5 -o -").code, 2);
  EXPECT_EQ(run("simulate --bogus -o -").code, 2);
  EXPECT_EQ(run("simulate --obs n99999 --sites 10 --t-max 1 -o -").code, 2);
  EXPECT_EQ(run("phase-diagram --c-range 0:1:0.1 -o -").code, 2);
  EXPECT_EQ(run("example 7").code, 2);
  const auto bad = scratch("bad.json");
  std::ofstream(bad) << "{not json";
  EXPECT_EQ(run("--config " + bad.string() + " simulate -o -").code, 2);
}

TEST(Cli, BlockColumns) {
  const auto r = run("block --sites 60 --t-max 20 --no-timestamp -o -");
  ASSERT_EQ(r.code, 0);
  const auto t = parse_csv(r.out);
  EXPECT_EQ(t.header,
            (std::vector<std::string>{"t", "E0_occ_m0", "E0_occ_m1", "E0_occ_m2", "E0_occ_m3"}));
  for (const auto& row : t.rows) EXPECT_NEAR(row[1], 1.0, 1e-12);
}

TEST(Cli, LindbladReferenceColumns) {
  const auto json_path = scratch("final.json");
  const auto r = run("lindblad --t-max 2 --dt 0.5 --no-timestamp --final-json " + json_path.string() + " -o -");
  ASSERT_EQ(r.code, 0);
  const auto t = parse_csv(r.out);
  EXPECT_EQ(t.header, (std::vector<std::string>{"t", "rho00", "rho11", "re_rho01", "im_rho01",
                                                "ref_exp_gamma_t", "ref_exp_2gamma_t"}));
  for (const auto& row : t.rows) {
    EXPECT_NEAR(row[2], row[5], 1e-8);
    EXPECT_NEAR(row[6], std::exp(-2.0 * row[0]), 1e-11);
  }
  EXPECT_NE(slurp(json_path).find("\"dim\""), std::string::npos);
}

TEST(Cli, ExampleFourBundle) {
  const auto dir = scratch("ex4");
  const auto r = run("example 4 --sites 200 --t-max 60 --out-dir " + dir.string() + " --no-timestamp");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("wrote "), std::string::npos);
  const auto t = parse_csv(slurp(dir / "example4.csv"));
  ASSERT_FALSE(t.rows.empty());
  const auto& last = t.rows.back();
  EXPECT_NEAR(last[1], 1.0, 1e-12);
  EXPECT_GT(last[2], 0.95);
  EXPECT_LT(last[3], 0.9);
  EXPECT_LT(last[4], 0.9);
}
