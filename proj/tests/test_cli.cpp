#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ystruct/cli.hpp"

namespace fs = std::filesystem;
using ystruct::cli_dispatch;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ystruct");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ystruct_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
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

const char* kYGraph = R"({"variables": ["W1", "W2", "X", "Z"],
  "edges": [["W1", "X"], ["W2", "X"], ["X", "Z"]]})";

}  // namespace

TEST_F(CliTest, Enumerate) {
  auto r = run({"enumerate", "--nodes", "4", "--classes"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "543\nclasses 185\n");
  r = run({"enumerate", "--nodes", "2", "--list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
  EXPECT_EQ(run({"enumerate", "--nodes", "6"}).code, 1);
  EXPECT_EQ(run({"enumerate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
}

TEST_F(CliTest, Dsep) {
  const auto g = write("y.json", kYGraph);
  EXPECT_EQ(run({"dsep", "--graph", g, "--a", "W1", "--b", "W2"}).out, "d-separated\n");
  EXPECT_EQ(run({"dsep", "--graph", g, "--a", "W1", "--b", "W2", "--cond", "X"}).out,
            "d-connected\n");
  EXPECT_EQ(run({"dsep", "--graph", g, "--a", "W1", "--b", "Z", "--cond", "X,W2"}).out,
            "d-separated\n");
  EXPECT_EQ(run({"dsep", "--graph", g, "--a", "W1", "--b", "Q"}).code, 2);
  EXPECT_EQ(run({"dsep", "--graph", path("missing.json"), "--a", "W1", "--b", "W2"}).code, 2);
  const auto cyclic = write("c.json", R"({"variables": ["A", "B"], "edges": [["A","B"],["B","A"]]})");
  EXPECT_EQ(run({"dsep", "--graph", cyclic, "--a", "A", "--b", "B"}).code, 2);
}

TEST_F(CliTest, GenScoreDiscoverRoundTrip) {
  const auto csv = path("y.csv");
  const auto net = path("net.json");
  auto r = run({"gen", "--fixture", "y_net", "--seed", "3", "--m", "5000", "--out", csv,
                "--net-out", net});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(fs::exists(net));
  r = run({"score", "--graph", write("y.json", kYGraph), "--data", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(std::stod(r.out), 0.0);
  r = run({"discover", "--data", csv, "--posteriors"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["tetrad_report"]["posteriors"].size(), 543u);
  EXPECT_EQ(doc["search"], "blcd");
  ASSERT_FALSE(doc["result"]["arcs"].empty());
  EXPECT_EQ(doc["result"]["arcs"][0]["x"], "X");
  EXPECT_EQ(doc["result"]["arcs"][0]["z"], "Z");
  r = run({"discover", "--data", csv, "--exhaustive", "--out", path("rep.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(fs::exists(path("rep.json")));
  EXPECT_EQ(run({"discover", "--data", csv, "--exhaustive", "--blcd"}).code, 1);
  EXPECT_EQ(run({"discover", "--data", csv, "--threshold", "2"}).code, 1);
  EXPECT_EQ(run({"discover", "--data", csv, "--ess", "0"}).code, 1);
}

TEST_F(CliTest, DiscoverOnEmptyDatasetIsUniform) {
  const auto csv = write("empty.csv", "A,B,C,D\n");
  const auto r = run({"discover", "--data", csv, "--threshold", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["cases"], 0);
  for (const auto& a : doc["tetrad_report"]["y_arcs"])
    EXPECT_NEAR(a["posterior"].get<double>(), 1.0 / 543, 1e-12);
}

TEST_F(CliTest, MalformedInputs) {
  const auto g = write("y.json", kYGraph);
  EXPECT_EQ(run({"discover", "--data", path("nope.csv")}).code, 2);
  EXPECT_EQ(run({"discover", "--data", write("nan.csv", "A,B,C,D\n0,1,nan,0\n")}).code, 2);
  EXPECT_EQ(run({"discover", "--data", write("short.csv", "A,B,C,D\n0,1,0\n")}).code, 2);
  EXPECT_EQ(run({"discover", "--data", write("three.csv", "A,B,C\n0,1,0\n")}).code, 2);
  EXPECT_EQ(run({"discover", "--data", write("blank.csv", "")}).code, 2);
  // Graph declares binary variables; a 2 in the data does not fit.
  EXPECT_EQ(run({"score", "--graph", g, "--data", write("ar.csv", "W1,W2,X,Z\n0,1,2,0\n")}).code, 2);
  EXPECT_EQ(run({"score", "--graph", write("bad.json", "{not json"), "--data",
                 write("ok.csv", "W1,W2,X,Z\n0,1,1,0\n")})
                .code,
            2);
  EXPECT_EQ(run({"simulate", "--config", write("cfg.json", R"({"replicates": 0})")}).code, 2);
  EXPECT_EQ(run({"gen", "--fixture", "nope", "--out", path("x.csv")}).code, 1);
}

TEST_F(CliTest, SimulateSmall) {
  const auto cfg = write("cfg.json", R"({"replicates": 2, "required_successes": 1,
                                         "sample_sizes": [500]})");
  const auto r = run({"simulate", "--config", cfg, "--json", path("sim.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("500"), std::string::npos);
  std::ifstream in(path("sim.json"));
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc["replicates"].size(), 2u);
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = YSTRUCT_CLI_PATH;
  const auto quiet = " >" + path("o.txt") + " 2>" + path("e.txt");
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " enumerate --nodes 3" + quiet).c_str())), 0);
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " enumerate --nodes 9" + quiet).c_str())), 1);
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " discover --data " + path("none.csv") + quiet).c_str())), 2);
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " --help" + quiet).c_str())), 0);
}
