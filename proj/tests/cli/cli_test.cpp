#include <json.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(POLYTOPE_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

TEST(Cli, RdCurveReproducesThreePacketLines) {
  const auto r = run("rd-curve --n 3 --t 1 --rates 1/2,7/12,2/3,1");
  ASSERT_EQ(r.status, 0);
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 5U);
  EXPECT_EQ(rows[0][0], "rate");
  // rate_exact, polytope_D_exact, mds_D_exact
  EXPECT_EQ(rows[1][1], "1/2");
  EXPECT_EQ(rows[1][4], "2/3");
  EXPECT_EQ(rows[1][6], "1");
  EXPECT_EQ(rows[2][4], "5/9");
  EXPECT_EQ(rows[2][6], "5/6");
  EXPECT_EQ(rows[3][4], "4/9");
  EXPECT_EQ(rows[3][6], "2/3");
  EXPECT_EQ(rows[4][4], "0");
  EXPECT_EQ(rows[4][6], "0");
}

TEST(Cli, RdCurveFivePacketEndpoint) {
  const auto r = run("rd-curve --n 5 --t 2 --rates 1/3");
  ASSERT_EQ(r.status, 0);
  const auto rows = csv(r.out);
  EXPECT_EQ(rows[1][4], "4/5");
  EXPECT_EQ(rows[1][3], "0.800000");
}

TEST(Cli, WitnessForTwoErrorsPasses) {
  const auto r = run("witness --t 2");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["report"]["passed"].get<bool>());
  EXPECT_TRUE(j["report"]["trusted_set"]["trusted"].empty());
}

TEST(Cli, WitnessNegativeControlExitsNonzero) {
  const auto r = run("witness --t 2 --last-mu 0");
  EXPECT_EQ(r.status, 1);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["report"]["passed"].get<bool>());
}

TEST(Cli, DssBoundsMatchesTradeoffCorners) {
  const auto r = run("dss-bounds --k 7 --d 7 --t 1 --grid 4");
  ASSERT_EQ(r.status, 0);
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 6U);
  // MSR corner: alpha = beta = 1/5 on both curves.
  EXPECT_EQ(rows[1][3], "1/5");
  EXPECT_EQ(rows[1][5], "1/5");
  EXPECT_EQ(rows[1][7], "1/5");
  // MBR corner of the outer bound: alpha = 1/3, beta = 1/15.
  EXPECT_EQ(rows[5][3], "1/3");
  EXPECT_EQ(rows[5][5], "1/15");
}

TEST(Cli, DssBoundsAtOnePoint) {
  const auto r = run("dss-bounds --k 7 --d 7 --t 1 --alpha 5 --beta 1");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["bounds"]["mbr_capacity_exact"], "15");
  EXPECT_EQ(j["bounds"]["lower_exact"], "6");
}

TEST(Cli, SimulateIsByteIdenticalAcrossRunsAndThreads) {
  const std::string args = "simulate --n 3 --t 1 --columns 2 --seed 17 --trials 200";
  const auto a = run(args);
  const auto b = run(args);
  const auto c = run(args + " --threads 3");
  ASSERT_EQ(a.status, 0);
  EXPECT_FALSE(a.out.empty());
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["summary"]["violations"], 0);
  EXPECT_NE(run("simulate --n 3 --t 1 --columns 2 --seed 18 --trials 200").out, a.out);
}

TEST(Cli, DssSimIsByteIdenticalAndExact) {
  const std::string args = "dss-sim --seed 3 --repairs 3";
  const auto a = run(args);
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, run(args).out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["reads"], j["exact_reads"]);
}

TEST(Cli, RandomizedModesRequireASeed) {
  EXPECT_EQ(run("simulate --n 3 --t 1").status, 2);
  EXPECT_EQ(run("dss-sim").status, 2);
}

TEST(Cli, InvalidParametersExitTwo) {
  EXPECT_EQ(run("genmatrix 3 3").status, 2);
  EXPECT_EQ(run("rd-curve --n 4 --t 2").status, 2);
  EXPECT_EQ(run("witness --t 1").status, 2);
}

TEST(Cli, ConfigFileOverridesFlags) {
  const auto path = write_temp("rd.json", R"({"mode": "rd-curve", "n": 5, "t": 2, "rates": "1/3"})");
  const auto r = run("--config " + path);
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(csv(r.out)[1][4], "4/5");
  const auto over = run("rd-curve --n 3 --t 1 --rates 1 --config " + path);
  ASSERT_EQ(over.status, 0);
  EXPECT_EQ(csv(over.out)[1][1], "1/3");
}

TEST(Cli, ConfigRejectsUnknownFields) {
  const auto path = write_temp("bad.json", R"({"mode": "rd-curve", "n": 3, "t": 1, "colour": 2})");
  EXPECT_EQ(run("--config " + path).status, 2);
}

TEST(Cli, EncodeDecodeRoundTrip) {
  const auto enc = run("encode --n 5 --t 2 --alphabet 2 --group-len 2 --columns 2 --symbols 101100111000");
  ASSERT_EQ(enc.status, 0);
  auto bundle = nlohmann::json::parse(enc.out);
  bundle["packets"][4]["codeword"][0] = 99;
  const auto path = write_temp("bundle.json", bundle.dump());
  const auto dec = run("decode " + path);
  ASSERT_EQ(dec.status, 0);
  const auto j = nlohmann::json::parse(dec.out);
  for (const auto& v : j["trusted_set"]["trusted"]) EXPECT_NE(v.get<int>(), 4);
  const auto& source = bundle["source"];
  ASSERT_EQ(j["recovered_source"].size(), source.size());
  for (std::size_t r = 0; r < source.size(); ++r)
    for (std::size_t c = 0; c < source[r].size(); ++c)
      EXPECT_EQ(j["recovered_source"][r][c].get<std::string>(), std::to_string(source[r][c].get<int>()));
}

TEST(Cli, HelpDocumentsFlags) {
  const auto r = run("simulate --help");
  EXPECT_EQ(r.status, 0);
  for (const char* flag : {"--seed", "--trials", "--strategy", "--box", "--exhaustive", "--threads"})
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
}

}  // namespace
