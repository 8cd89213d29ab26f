// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "graphnet/code.hpp"
#include "graphnet/graph.hpp"
#include "graphnet/statevec.hpp"
#include "graphnet/synth.hpp"
#include "support/cli_runner.hpp"
#include "support/random_graphs.hpp"

using namespace graphnet;
namespace ts = testsupport;

namespace {

constexpr double kTolerance = 1e-10;
constexpr double kStructuralTolerance = 1e-12;

struct Outcome {
  bool pass = true;
  double max_dev = 0.0;
  std::string detail;

  void deviation(double dev, double tol) {
    max_dev = std::max(max_dev, dev);
    if (!(dev <= tol)) pass = false;
  }
  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      if (detail.find(why) == std::string::npos) detail += (detail.empty() ? "" : "; ") + why;
    }
  }
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

StateVector random_state(const std::vector<int>& vertices, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  StateVector s(d, vertices);
  for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) s.amplitudes()(i) = Complex(normal(rng), normal(rng));
  s.amplitudes() /= s.norm();
  return s;
}

// Criteria 1-3 share one batch of cluster graphs.
std::vector<WeightedGraph> cluster_batch() {
  ts::Rng rng(20240601);
  std::vector<WeightedGraph> batch;
  const int ds[] = {2, 3, 5};
  for (int i = 0; i < 200; ++i) {
    const int d = ds[i % 3];
    const int max_v = d == 2 ? 8 : d == 3 ? 6 : 5;
    const int v = ts::uniform_int(rng, 1, max_v);
    batch.push_back(canonicalize(ts::random_graph(rng, d, v, std::uniform_real_distribution<double>(0.2, 0.9)(rng))));
  }
  return batch;
}

Outcome criterion_cluster(const std::vector<WeightedGraph>& batch) {
  Outcome out;
  for (const auto& g : batch) {
    const auto state = run(synth_cluster_shift_form(g), ground_state(iota_vertices(g.vertex_count()), g.d()));
    out.deviation(max_abs_diff(state.amplitudes(), cluster_oracle(g).amplitudes()), kTolerance);
  }
  out.detail = fmt("%zu graphs", batch.size());
  return out;
}

Outcome criterion_gate_counts(const std::vector<WeightedGraph>& batch) {
  Outcome out;
  for (const auto& g : batch) {
    const int v = g.vertex_count();
    const int l = edge_count(g);
    const auto shift = gate_count(synth_cluster_shift_form(g));
    const auto phase = gate_count(synth_cluster_phase_form(g));
    out.deviation(std::abs(shift.total - (v + l)), 0.0);
    out.deviation(std::abs(phase.total - (v + l)), 0.0);
    out.deviation(std::abs(phase.fourier - v), 0.0);
    out.deviation(std::abs(phase.cphase - l), 0.0);
  }
  out.detail = fmt("%zu graphs, exact", batch.size());
  return out;
}

// Families whose edge order coincides with the shift-form traversal.
std::vector<WeightedGraph> traversal_ordered_graphs() {
  std::vector<WeightedGraph> out;
  ts::Rng rng(7);
  for (int d : {2, 3, 5}) {
    for (int v = 1; v <= (d == 5 ? 5 : 6); ++v) {
      out.emplace_back(d, v);  // edgeless
      WeightedGraph path(d, v);
      for (int i = 0; i + 1 < v; ++i) path.set_weight(i, i + 1, ts::uniform_int(rng, 1, d - 1));
      out.push_back(path);
    }
    for (int w = 1; w < d; ++w) {
      WeightedGraph edge(d, 2);
      edge.set_weight(0, 1, w);
      out.push_back(edge);
    }
  }
  return out;
}

Outcome criterion_phase_shift(const std::vector<WeightedGraph>& batch) {
  Outcome out;
  for (const auto& g : batch) {
    const auto phase = synth_cluster_phase_form(g);
    const Eigen::MatrixXcd shift = circuit_unitary(synth_cluster_shift_form(g)).matrix;
    out.deviation(max_abs_diff(circuit_unitary(phase).matrix, shift), kTolerance);
    out.deviation(max_abs_diff(circuit_unitary(lower_phases(phase)).matrix, shift), kTolerance);
  }
  const auto ordered = traversal_ordered_graphs();
  int identical = 0;
  for (const auto& g : ordered) {
    const bool same = emit_netlist(lower_phases(synth_cluster_phase_form(g))) == emit_netlist(synth_cluster_shift_form(g));
    identical += same;
    out.require(same, "lowered netlist differs from shift form");
  }
  out.detail = fmt("%zu unitaries; %d/%zu traversal-ordered netlists byte-identical", batch.size(), identical,
                   ordered.size());
  return out;
}

Outcome criterion_encoder_network() {
  Outcome out;
  ts::Rng rng(3301);
  for (int i = 0; i < 100; ++i) {
    const int d = 2 + i % 2;
    const int v = ts::uniform_int(rng, 2, 6);
    const auto g = ts::random_code(rng, d, v, std::min(3, v - 1));
    const auto net = synth_encoder_network(g);
    out.deviation(max_abs_diff(circuit_unitary(net.circuit).matrix, encoder_network_oracle(g).matrix), kTolerance);
    out.deviation(std::abs(gate_count(net.circuit).total - (v + edge_count(g))), 0.0);
  }
  out.detail = "100 graphs";
  return out;
}

Outcome criterion_coding_identity() {
  Outcome out;
  int graphs = 0;
  int forward = 0, exchanged = 0, both = 0;
  double best_conj = 0.0;
  for (int d : {2, 3}) {
    for (int v = 2; v <= 4; ++v) {
      for (const auto& base : ts::all_graphs(d, v)) {
        for (int input : {0, v - 1}) {
          if (v == 2 && input == 1) continue;  // same graph up to relabeling of two vertices
          WeightedGraph g = base;
          g.set_inputs({input});
          ++graphs;
          const auto report = verify_coding_identity(g, kTolerance);
          out.deviation(report.forward_deviation, kTolerance);
          both += report.matching_variant == "both";
          forward += report.matching_variant == "F_X u F_X*";
          exchanged += report.matching_variant == "F_X* u F_X";
          const auto formula = channel_C(g);
          const auto pipeline = channel_pipeline(g);
          out.deviation(superoperator_deviation(formula, pipeline), kTolerance);
          out.deviation(summed_superoperator_deviation(formula, pipeline), kTolerance);
          best_conj = std::max(best_conj, branch_deviation(channel_C(g, true), pipeline));
        }
      }
    }
  }
  out.detail = fmt("%d graphs; variant F_X u F_X* (both: %d, forward only: %d, exchanged only: %d); "
                   "u^(h)* branches off by up to %.3g",
                   graphs, both, forward, exchanged, best_conj);
  return out;
}

Outcome criterion_direct_encoder() {
  Outcome out;
  ts::Rng rng(4401);
  for (int i = 0; i < 100; ++i) {
    const int d = 2 + i % 2;
    const int n = ts::uniform_int(rng, 1, 6);
    const auto g = ts::random_direct_code(rng, d, n);
    out.deviation(direct_encoder_deviation(g), kTolerance);
    out.deviation(std::abs(gate_count(synth_direct_encoder(g).circuit).total - (n + edge_count(g) - 1)), 0.0);
  }
  WeightedGraph star(2, 4);
  for (int leaf = 1; leaf <= 3; ++leaf) star.set_weight(0, leaf, 1);
  star.set_inputs({0});
  for (int h = 0; h < 2; ++h) {
    const auto column = direct_encoding(star, basis_state({0}, 2, std::vector<int>{h})).amplitudes();
    for (int idx = 0; idx < 8; ++idx) {
      const int parity = h * __builtin_popcount(static_cast<unsigned>(idx)) % 2;
      const Complex expected = (parity ? -1.0 : 1.0) / std::sqrt(8.0);
      out.deviation(std::abs(column(idx) - expected), kTolerance);
    }
  }
  out.detail = "100 graphs + 3-leaf star columns";
  return out;
}

Outcome criterion_statistics() {
  Outcome out;
  ts::Rng rng(7701);
  std::mt19937_64 inputs_rng(7702);
  int codes = 0;
  for (int attempt = 0; attempt < 2000 && codes < 40; ++attempt) {
    const int d = 2 + attempt % 2;
    const int v = ts::uniform_int(rng, 3, d == 2 ? 6 : 5);
    const auto g = ts::random_code(rng, d, v, 2, 0.7);
    if (!isometry_check(encoder_oracle(g)).isometric) continue;
    ++codes;
    const double expected = std::pow(static_cast<double>(d), -static_cast<double>(g.inputs().size()));
    for (int trial = 0; trial < 20; ++trial) {
      for (const auto& branch : measured_encoding(g, random_state(g.inputs(), d, inputs_rng), EncodingMode::all())) {
        out.deviation(std::abs(branch.probability - expected), kTolerance);
      }
    }
  }
  out.require(codes >= 20, "too few isometric codes sampled");
  out.detail = fmt("%d isometric codes x 20 inputs", codes);
  return out;
}

Outcome criterion_structural() {
  Outcome out;
  for (int d = 2; d <= 5; ++d) {
    for (int wires = 1; wires <= 3; ++wires) {
      const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(checked_pow(d, wires), checked_pow(d, wires));
      for (int a = 0; a < wires; ++a) {
        Circuit f4(d, wires);
        for (int i = 0; i < 4; ++i) f4.append(Gate::fourier(a));
        out.deviation(max_abs_diff(circuit_unitary(f4).matrix, id), kStructuralTolerance);
        for (int b = 0; b < wires; ++b) {
          if (a == b) continue;
          Circuit shifts(d, wires);
          for (int i = 0; i < d; ++i) shifts.append(Gate::cshift(a, b, 1));
          out.deviation(max_abs_diff(circuit_unitary(shifts).matrix, id), kStructuralTolerance);
        }
      }
      const auto k = iota_vertices(wires);
      const auto f = fourier_op(k, k, d);
      const auto f_adj = fourier_op(k, k, d, true);
      for (const auto& h : enumerate_group(k, d)) {
        out.deviation(max_abs_diff(multiplier_op(h).matrix, compose(f, compose(shift_op(h), f_adj)).matrix),
                      kStructuralTolerance);
      }
    }
  }
  for (int d = 2; d <= 7; ++d) {
    for (int g = 0; g < d; ++g) {
      for (int h = 0; h < d; ++h) {
        out.deviation(std::abs(chi(Digit(g, d), Digit(h, d)) - chi(Digit(h, d), Digit(g, d))), kStructuralTolerance);
        out.deviation(std::abs(std::pow(chi(Digit(g, d), Digit(h, d)), d) - 1.0), kStructuralTolerance);
        for (int g2 = 0; g2 < d; ++g2) {
          const Complex lhs = chi(add_mod(Digit(g, d), Digit(g2, d)), Digit(h, d));
          out.deviation(std::abs(lhs - chi(Digit(g, d), Digit(h, d)) * chi(Digit(g2, d), Digit(h, d))),
                        kStructuralTolerance);
        }
      }
    }
  }
  out.detail = "d<=5 up to 3 digits; chi laws d<=7";
  return out;
}

Outcome criterion_determinism() {
  Outcome out;
  ts::TempDir dir;
  ts::Rng rng(9901);
  std::vector<std::string> commands;
  for (int i = 0; i < 4; ++i) {
    auto g = ts::random_code(rng, 2 + i % 2, 4, 1, 0.7);
    const auto path = "'" + dir.write("g" + std::to_string(i) + ".json", serialize_graph(g)) + "'";
    const auto input = std::string(g.inputs().size(), '1');
    commands.push_back("synth --form encoder " + path);
    commands.push_back("verify --all --seed 17 " + path);
    commands.push_back("verify --all --json --seed 17 " + path);
    commands.push_back("encode " + path + " --input " + input + " --mode sample --seed 5");
    commands.push_back("encode " + path + " --input " + input);
    commands.push_back("stats " + path);
    const auto netlist = ts::run_cli(GRAPHNET_CLI, "synth --form cluster-shift " + path, dir).out;
    commands.push_back("simulate '" + dir.write("c" + std::to_string(i) + ".net", netlist) + "' --dump");
  }
  commands.push_back("verify --check gatecounts --seed 3 '" + dir.path().string() + "'");
  const std::hash<std::string> hash;
  for (const auto& command : commands) {
    const auto first = ts::run_cli(GRAPHNET_CLI, command, dir);
    const auto second = ts::run_cli(GRAPHNET_CLI, command, dir);
    out.require(first.exit_code == 0 || first.exit_code == 1, "unexpected exit code for: " + command);
    out.require(!first.out.empty(), "empty output for: " + command);
    out.require(hash(first.out) == hash(second.out) && first.exit_code == second.exit_code,
                "output differs for: " + command);
  }
  out.detail = fmt("%zu commands run twice", commands.size()) + (out.detail.empty() ? "" : "; " + out.detail);
  return out;
}

}  // namespace

int main() {
  const auto batch = cluster_batch();
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "cluster-state-correctness", [&] { return criterion_cluster(batch); }},
      {2, "cluster-gate-count", [&] { return criterion_gate_counts(batch); }},
      {3, "phase-shift-equivalence", [&] { return criterion_phase_shift(batch); }},
      {4, "encoder-network", criterion_encoder_network},
      {5, "coding-identity-and-channel", criterion_coding_identity},
      {6, "direct-encoder", criterion_direct_encoder},
      {7, "measurement-statistics", criterion_statistics},
      {8, "structural-invariants", criterion_structural},
      {9, "cli-determinism", criterion_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("[%s] %d %s max_dev=%.3g  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.max_dev, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
