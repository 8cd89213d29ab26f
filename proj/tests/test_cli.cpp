#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "graphnet/graph.hpp"
#include "support/cli_runner.hpp"
#include "support/random_graphs.hpp"

namespace ts = testsupport;

namespace {

const char* const kTriangle = R"({"d":2,"vertices":3,"edges":[[0,1,1],[1,2,1],[0,2,1]],"inputs":[]})";
const char* const kStar = R"({"d":2,"vertices":4,"edges":[[0,1,1],[0,2,1],[0,3,1]],"inputs":[0]})";
const char* const kTwoInput = R"({"d":2,"vertices":3,"edges":[[0,2,1],[1,2,1]],"inputs":[0,1]})";
const char* const kEdgelessCode = R"({"d":2,"vertices":2,"edges":[],"inputs":[0]})";
const char* const kEdge = R"({"d":2,"vertices":2,"edges":[[0,1,1]],"inputs":[]})";

class Cli : public ::testing::Test {
 protected:
  ts::CliResult run(const std::string& args) { return ts::run_cli(GRAPHNET_CLI, args, dir_); }
  std::string file(const std::string& name, const std::string& text) { return "'" + dir_.write(name, text) + "'"; }

  ts::TempDir dir_;
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

int gate_lines(const std::string& netlist) {
  const auto all = lines(netlist);
  return static_cast<int>(std::count_if(all.begin() + 1, all.end(), [](const std::string& l) { return l[0] != '#'; }));
}

}  // namespace

TEST_F(Cli, SynthClusterShiftTriangle) {
  const auto r = run("synth --form cluster-shift " + file("triangle.json", kTriangle));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(gate_lines(r.out), 6);
  EXPECT_EQ(r.out, "QDNET d=2 q=3\nF 0\nCSHIFT 0 1 1\nCSHIFT 0 2 1\nF 1\nCSHIFT 1 2 1\nF 2\n");
}

TEST_F(Cli, SynthDirectStar) {
  const auto r = run("synth --form direct " + file("star.json", kStar));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(gate_lines(r.out), 5);
  const auto all = lines(r.out);
  EXPECT_EQ(std::count_if(all.begin(), all.end(), [](const std::string& l) { return l[0] == '#'; }), 1);
  EXPECT_NE(r.out.find("# wires: 0=v1 1=v2 2=v3"), std::string::npos);
}

TEST_F(Cli, SynthDirectTwoInputsIsPreconditionError) {
  const auto r = run("synth --form direct " + file("twoinput.json", kTwoInput));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("exactly one input"), std::string::npos);
}

TEST_F(Cli, SynthOtherForms) {
  const auto star = file("star.json", kStar);
  EXPECT_EQ(gate_lines(run("synth --form cluster-phase " + star).out), 7);
  EXPECT_EQ(gate_lines(run("synth --form encoder " + star).out), 7);
  EXPECT_EQ(run("synth --form encoder " + file("triangle.json", kTriangle)).exit_code, 2);
  EXPECT_EQ(run("synth --form bogus " + star).exit_code, 2);
}

TEST_F(Cli, SimulateSingleEdgeCluster) {
  const auto netlist = run("synth --form cluster-shift " + file("edge.json", kEdge)).out;
  const auto r = run("simulate " + file("edge.net", netlist) + " --init 00 --dump");
  EXPECT_EQ(r.exit_code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 4u);
  const std::vector<double> expected = {0.5, 0.5, 0.5, -0.5};
  const char* labels[] = {"00", "01", "10", "11"};
  for (std::size_t i = 0; i < 4; ++i) {
    std::istringstream in(rows[i]);
    std::string digits;
    double re = 0, im = 0;
    in >> digits >> re >> im;
    EXPECT_EQ(digits, labels[i]);
    EXPECT_NEAR(re, expected[i], 1e-12);
    EXPECT_NEAR(im, 0.0, 1e-12);
  }
}

TEST_F(Cli, SimulateEmptyNetlistEchoesInput) {
  const auto r = run("simulate " + file("empty.net", "QDNET d=3 q=2\n") + " --init 21");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "21 1 0\n");
  EXPECT_EQ(lines(run("simulate " + file("e.net", "QDNET d=3 q=2\n") + " --dump").out).size(), 9u);
}

TEST_F(Cli, SimulateRejectsBadInit) {
  const auto net = file("edge.net", "QDNET d=2 q=2\nF 0\n");
  const auto r = run("simulate " + net + " --init 02");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("radix"), std::string::npos);
  EXPECT_EQ(run("simulate " + net + " --init 0").exit_code, 2);
  EXPECT_EQ(run("simulate " + file("bad.net", "QDNET d=2 q=2\nCSHIFT 0 0 1\n")).exit_code, 3);
}

TEST_F(Cli, VerifyStarPasses) {
  const auto r = run("verify --all " + file("star.json", kStar));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("result PASS"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, VerifyEdgelessCodeFailsIsometry) {
  const auto r = run("verify --all " + file("edgeless_code.json", kEdgelessCode));
  EXPECT_EQ(r.exit_code, 1);
  const auto rows = lines(r.out);
  EXPECT_TRUE(std::any_of(rows.begin(), rows.end(), [](const std::string& l) {
    return l.rfind("isometry", 0) == 0 && l.find("FAIL") != std::string::npos;
  }));
}

TEST_F(Cli, VerifyGateCountsOverDirectory) {
  ts::Rng rng(71);
  for (int i = 0; i < 12; ++i) {
    auto g = ts::random_direct_code(rng, 2 + i % 3, 2 + i % 4);
    dir_.write("batch/g" + std::to_string(10 + i) + ".json", graphnet::serialize_graph(g));
  }
  dir_.write("batch/notes.txt", "ignored");
  const auto r = run("verify --check gatecounts '" + (dir_.path() / "batch").string() + "'");
  EXPECT_EQ(r.exit_code, 0) << r.out << r.err;
  const auto rows = lines(r.out);
  EXPECT_EQ(std::count_if(rows.begin(), rows.end(), [](const std::string& l) { return l.rfind("gatecounts", 0) == 0; }), 12);
  EXPECT_EQ(r.out.find("notes.txt"), std::string::npos);
  EXPECT_LT(r.out.find("g10.json"), r.out.find("g21.json"));
}

TEST_F(Cli, VerifyJsonAndSelectors) {
  const auto star = file("star.json", kStar);
  const auto r = run("verify --json --check isometry --check direct " + star);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.front(), '[');
  EXPECT_NE(r.out.find("\"name\": \"isometry\""), std::string::npos);
  EXPECT_EQ(r.out.find("\"name\": \"cluster\""), std::string::npos);
  EXPECT_EQ(run("verify --check unknown " + star).exit_code, 2);
  EXPECT_EQ(run("verify --all --check isometry " + star).exit_code, 2);
}

TEST_F(Cli, Stats) {
  auto r = run("stats " + file("triangle.json", kTriangle));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out,
            "vertices 3\nedges 3\ninputs 0\noutputs 3\ncluster_gates 6\nencoder_gates n/a\ndirect_gates n/a\n");
  r = run("stats " + file("star.json", kStar));
  EXPECT_NE(r.out.find("direct_gates 5\n"), std::string::npos);
  EXPECT_NE(r.out.find("encoder_gates 7\n"), std::string::npos);
  r = run("stats " + file("empty.json", R"({"d":3,"vertices":4,"edges":[],"inputs":[]})"));
  EXPECT_NE(r.out.find("edges 0\n"), std::string::npos);
  EXPECT_NE(r.out.find("cluster_gates 4\n"), std::string::npos);
}

TEST_F(Cli, EncodeModes) {
  const auto star = file("star.json", kStar);
  auto r = run("encode " + star + " --input 0 --mode branch --outcome 0");
  EXPECT_EQ(r.exit_code, 0);
  ASSERT_EQ(r.out.rfind("outcome 0 probability ", 0), 0u);
  EXPECT_NEAR(std::stod(lines(r.out)[0].substr(22)), 0.5, 1e-12);
  EXPECT_EQ(lines(r.out).size(), 9u);

  r = run("encode " + star + " --input 1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(lines(r.out).size(), 18u);

  EXPECT_EQ(run("encode " + star + " --input 1 --mode sample").exit_code, 2);
  const auto a = run("encode " + star + " --input 1 --mode sample --seed 7");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, run("encode " + star + " --input 1 --mode sample --seed 7").out);

  r = run("encode " + star + " --input 1 --scheme direct");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(lines(r.out).size(), 8u);
  EXPECT_EQ(run("encode " + star + " --input 2").exit_code, 2);
  EXPECT_EQ(run("encode " + star + " --input 0 --mode branch").exit_code, 2);
}

TEST_F(Cli, Dot) {
  const auto r = run("dot " + file("star.json", kStar));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.rfind("graph G {\n", 0), 0u);
  EXPECT_NE(r.out.find("  0 [shape=box];\n"), std::string::npos);
  EXPECT_NE(r.out.find("  0 -- 3 [label=\"1\"];\n"), std::string::npos);
}

TEST_F(Cli, IoAndParseErrors) {
  EXPECT_EQ(run("stats '" + (dir_.path() / "missing.json").string() + "'").exit_code, 3);
  EXPECT_EQ(run("stats " + file("broken.json", "{\"d\":2,")).exit_code, 3);
  EXPECT_EQ(run("dot " + file("loop.json", R"({"d":2,"vertices":2,"edges":[[1,1,1]],"inputs":[]})")).exit_code, 3);
  EXPECT_EQ(run("verify --all '" + dir_.path().string() + "'").exit_code, 3);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
  EXPECT_EQ(run("synth").exit_code, 2);
  EXPECT_EQ(run("--help").exit_code, 0);
}

TEST_F(Cli, WarnsOnVanishingWeight) {
  const auto r = run("stats " + file("zero.json", R"({"d":2,"vertices":2,"edges":[[0,1,2]],"inputs":[]})"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("edges 0\n"), std::string::npos);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}
