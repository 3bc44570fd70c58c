#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "semiclique/cli.h"
#include "semiclique/io.h"

namespace semiclique {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("semiclique_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int call(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }
  Json stdout_json() const { return Json::parse(out_.str()); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, GenWritesHiddenSolution) {
  ASSERT_EQ(call({"gen", "--n", "30", "--k", "14", "--p", "0.5", "--plan", "delete-all-cut", "--seed", "5",
                  "-o", path("inst.json")}),
            kExitOk);
  Json inst = read_json_file(path("inst.json"));
  ASSERT_TRUE(inst.contains("solution"));
  FKInstance back = instance_from_json(inst);
  EXPECT_EQ(back.planted.size(), 14u);
  EXPECT_TRUE(back.graph.is_clique(back.planted));
  Bitset s = back.graph.make_set(back.planted);
  for (auto [u, v] : back.graph.edges()) EXPECT_EQ(s.test(u), s.test(v));
}

TEST_F(CliTest, CertifyGeometric) {
  ASSERT_EQ(call({"gen", "--bipartite", "--k", "12", "--m", "200", "--seed", "3", "-o", path("bip.json")}), kExitOk);
  const int code = call({"certify", "--input", path("bip.json"), "--method", "geometric", "--r", "1", "--k", "12"});
  Json rep = stdout_json();
  const Json& result = rep.at("result");
  ASSERT_TRUE(result.contains("applicable"));
  ASSERT_TRUE(result.contains("certified_bound"));
  EXPECT_EQ(code, result["applicable"].get<bool>() ? kExitOk : kExitNegative);
  EXPECT_TRUE(result["verified"].get<bool>());
  EXPECT_EQ(result["kind"], "geometric");
}

TEST_F(CliTest, CertifyInapplicableExitsTwo) {
  std::ofstream(path("full.txt")) << "3 4 12\n0 0\n0 1\n0 2\n0 3\n1 0\n1 1\n1 2\n1 3\n2 0\n2 1\n2 2\n2 3\n";
  EXPECT_EQ(call({"certify", "--input", path("full.txt"), "--method", "geometric", "--k", "3"}), kExitNegative);
  EXPECT_FALSE(stdout_json()["result"]["applicable"].get<bool>());
}

TEST_F(CliTest, ListDecodeRecoversPlanted) {
  ASSERT_EQ(call({"gen", "--n", "30", "--k", "14", "--p", "0.5", "--plan", "delete-all-cut", "--seed", "5",
                  "-o", path("inst.json")}),
            kExitOk);
  ASSERT_EQ(call({"listdecode", "--input", path("inst.json"), "--k", "14", "--t", "1", "--degree", "4", "--seed",
                  "9", "-o", path("report.json")}),
            kExitOk);
  Json rep = read_json_file(path("report.json"));
  const VertexSet planted = *planted_from_instance_json(read_json_file(path("inst.json")));
  const auto final_list = rep["result"]["final_list"].get<std::vector<VertexSet>>();
  EXPECT_NE(std::find(final_list.begin(), final_list.end(), planted), final_list.end());
  EXPECT_TRUE(rep["result"]["metrics"]["final_contains_planted"].get<bool>());
}

TEST_F(CliTest, ReportEnvelopeAndReplay) {
  ASSERT_EQ(call({"lowdeg", "--k", "4", "--n", "6", "--l", "2", "--D", "2", "-o", path("low.json")}), kExitOk);
  Json rep = read_json_file(path("low.json"));
  for (const char* key : {"tool", "version", "config", "config_hash", "exit_code", "timings", "result"})
    EXPECT_TRUE(rep.contains(key)) << key;
  EXPECT_TRUE(rep["timings"].contains("wall_seconds"));
  EXPECT_DOUBLE_EQ(rep["result"]["norm_sq_minus_one"].get<double>(), 0.5625);
  EXPECT_EQ(rep["result"]["exact"], "9/16");

  ASSERT_EQ(call({"--config", path("low.json")}), kExitOk);
  Json again = read_json_file(path("low.json"));
  EXPECT_EQ(again["result"], rep["result"]);
  EXPECT_EQ(again["config_hash"], rep["config_hash"]);
}

TEST_F(CliTest, ReplayReproducesStochasticRun) {
  ASSERT_EQ(call({"gen", "--n", "20", "--k", "8", "--seed", "2", "-o", path("inst.json")}), kExitOk);
  ASSERT_EQ(call({"listdecode", "--input", path("inst.json"), "--k", "8", "--degree", "2", "--N", "12", "--seed",
                  "4", "-o", path("a.json")}),
            kExitOk);
  Json a = read_json_file(path("a.json"));
  ASSERT_EQ(call({"--config", path("a.json")}), kExitOk);
  Json b = read_json_file(path("a.json"));
  EXPECT_EQ(a["result"], b["result"]);
}

TEST_F(CliTest, ConfigRoundTrip) {
  ExperimentConfig cfg;
  cfg.subcommand = "listdecode";
  cfg.seed = 0xffffffffffffull;
  cfg.delta = 0.1;
  cfg.csv = "x.csv";
  cfg.run_solver = true;
  EXPECT_EQ(config_from_json(Json::parse(to_json(cfg).dump())), cfg);
  EXPECT_EQ(config_hash(cfg), config_hash(config_from_json(to_json(cfg))));
  ExperimentConfig other = cfg;
  other.t = 2;
  EXPECT_NE(config_hash(cfg), config_hash(other));
  // Missing keys keep their defaults.
  EXPECT_EQ(config_from_json(Json{{"subcommand", "gen"}}).k, ExperimentConfig{}.k);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(call({"frobnicate"}), kExitUsage);
  EXPECT_EQ(call({"gen", "--no-such-flag"}), kExitUsage);
  EXPECT_EQ(call({"certify", "--k", "3"}), kExitUsage);
  EXPECT_EQ(call({"gen", "--plan", "delete-everything", "-o", path("x.json")}), kExitUsage);
  std::ofstream(path("b.txt")) << "1 1 1\n0 0\n";
  EXPECT_EQ(call({"certify", "--input", path("b.txt"), "--method", "magic", "--k", "2"}), kExitUsage);
  EXPECT_EQ(call({"oracle", "--mode", "psychic", "--input", path("b.txt")}), kExitUsage);
  EXPECT_EQ(call({"--help"}), kExitOk);
}

TEST_F(CliTest, RuntimeErrorsExitOne) {
  EXPECT_EQ(call({"certify", "--input", path("missing.txt"), "--k", "3"}), kExitError);
  EXPECT_EQ(call({"lowdeg", "--k", "4", "--n", "6", "--l", "2", "--D", "40"}), kExitError);
}

TEST_F(CliTest, SolveInfeasibleExitsTwo) {
  std::ofstream(path("empty.txt")) << "3 0\n";
  EXPECT_EQ(call({"solve", "--input", path("empty.txt"), "--k", "2", "--degree", "2"}), kExitNegative);
  EXPECT_EQ(stdout_json()["result"]["status"], "infeasible");
}

TEST_F(CliTest, SolveWritesPseudoDistribution) {
  std::ofstream(path("tri.txt")) << "3 3\n0 1\n1 2\n0 2\n";
  ASSERT_EQ(call({"solve", "--input", path("tri.txt"), "--k", "3", "--degree", "2"}), kExitOk);
  Json res = stdout_json()["result"];
  EXPECT_EQ(res["moments"][""], 1.0);
  EXPECT_NEAR(res["moments"]["0"].get<double>(), 1.0, 1e-5);
}

TEST_F(CliTest, OracleModes) {
  std::ofstream(path("g.txt")) << "5 4\n0 1\n1 2\n0 2\n3 4\n";
  ASSERT_EQ(call({"oracle", "--mode", "cliques", "--input", path("g.txt"), "--k", "3"}), kExitOk);
  EXPECT_EQ(stdout_json()["result"]["list"], Json::parse("[[0,1,2]]"));
  ASSERT_EQ(call({"oracle", "--mode", "good", "--input", path("g.txt"), "--k", "3", "--l", "1"}), kExitOk);
  EXPECT_EQ(stdout_json()["result"]["length"], 1);
  ASSERT_EQ(call({"oracle", "--mode", "quasi", "--input", path("g.txt"), "--k", "3"}), kExitOk);
  EXPECT_EQ(stdout_json()["result"]["list"], Json::parse("[[0,1,2]]"));
  std::ofstream(path("b.txt")) << "2 2 1\n0 0\n";
  ASSERT_EQ(call({"oracle", "--mode", "biclique", "--input", path("b.txt"), "--k", "2"}), kExitOk);
  EXPECT_EQ(stdout_json()["result"]["max_left"], 1);
}

TEST_F(CliTest, LowDegCsv) {
  ASSERT_EQ(call({"lowdeg", "--k", "4", "--n", "6", "--l", "2", "--D", "3", "--csv", path("terms.csv")}), kExitOk);
  std::ifstream csv(path("terms.csv"));
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "L,R,degrees,count,moment,contribution");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, static_cast<int>(stdout_json()["result"]["terms"].size()));
}

TEST_F(CliTest, SdpLowerBoundConstruction) {
  ASSERT_EQ(call({"sdp-lb", "--k", "8", "--n", "32", "--l", "1", "--seed", "1", "--solve"}), kExitOk);
  Json res = stdout_json()["result"];
  EXPECT_LE(res["linear_residual"].get<double>(), 1e-9);
  EXPECT_EQ(res["solver"]["status"], "feasible");
}

TEST_F(CliTest, ThreadEnvironmentVariable) {
  ::setenv(kThreadsEnvVar, "1", 1);
  EXPECT_EQ(call({"lowdeg", "--k", "4", "--n", "6", "--l", "2", "--D", "2"}), kExitOk);
  ::unsetenv(kThreadsEnvVar);
}

TEST_F(CliTest, Bench) {
  ASSERT_EQ(call({"bench", "--seed", "1"}), kExitOk);
  EXPECT_TRUE(stdout_json()["result"]["timings"].contains("spectral_bound_12x200"));
}

}  // namespace
}  // namespace semiclique
