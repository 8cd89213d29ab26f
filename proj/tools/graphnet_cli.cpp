#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphnet/circuit.hpp"
#include "graphnet/code.hpp"
#include "graphnet/error.hpp"
#include "graphnet/graph.hpp"
#include "graphnet/statevec.hpp"
#include "graphnet/synth.hpp"
#include "graphnet/verify.hpp"

namespace fs = std::filesystem;
using namespace graphnet;

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

WeightedGraph load_graph(const std::string& path) {
  std::vector<std::string> warnings;
  WeightedGraph graph = parse_graph(read_file(path), &warnings);
  for (const auto& w : warnings) std::cerr << path << ": warning: " << w << "\n";
  return graph;
}

int cmd_synth(const std::string& path, const std::string& form) {
  const WeightedGraph graph = load_graph(path);
  Circuit circuit(graph.d(), graph.vertex_count());
  if (form == "cluster-phase") {
    circuit = synth_cluster_phase_form(graph);
  } else if (form == "cluster-shift") {
    circuit = synth_cluster_shift_form(graph);
  } else if (form == "encoder") {
    circuit = synth_encoder_network(graph).circuit;
  } else {
    circuit = synth_direct_encoder(graph).circuit;
  }
  std::cout << emit_netlist(circuit);
  return kOk;
}

int cmd_simulate(const std::string& path, const std::string& init, bool dump) {
  const Circuit circuit = parse_netlist(read_file(path));
  const auto wires = iota_vertices(circuit.register_size());
  std::vector<int> digits(wires.size(), 0);
  if (!init.empty()) digits = parse_digits(init, circuit.d(), wires.size());
  const StateVector out = run(circuit, basis_state(wires, circuit.d(), digits));
  std::cout << dump_state(out, !dump);
  return kOk;
}

std::vector<std::string> graph_files(const std::string& target) {
  if (!fs::is_directory(target)) return {target};
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(target)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IoError("no .json graph files in " + target);
  return files;
}

int cmd_verify(const std::string& target, const std::vector<std::string>& checks, bool json, std::uint64_t seed) {
  VerifyOptions options;
  options.checks = checks;
  options.seed = seed;
  std::vector<GraphReport> reports;
  for (const auto& file : graph_files(target)) {
    reports.push_back(verify_graph(load_graph(file), options, file));
  }
  std::cout << (json ? format_report_json(reports) : format_report_text(reports));
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const GraphReport& r) { return r.passed(); });
  return ok ? kOk : kVerifyFailed;
}

int cmd_stats(const std::string& path) {
  const WeightedGraph graph = load_graph(path);
  const int v = graph.vertex_count();
  const int l = edge_count(graph);
  const int k = static_cast<int>(graph.inputs().size());
  std::printf("vertices %d\n", v);
  std::printf("edges %d\n", l);
  std::printf("inputs %d\n", k);
  std::printf("outputs %d\n", v - k);
  std::printf("cluster_gates %d\n", v + l);
  if (k > 0) {
    std::printf("encoder_gates %d\n", v + edge_count(strip_input_edges(graph)));
  } else {
    std::printf("encoder_gates n/a\n");
  }
  const auto outputs = graph.outputs();
  if (k == 1 && !outputs.empty() && graph.weight(graph.inputs()[0], outputs[0]) == 1) {
    std::printf("direct_gates %d\n", (v - 1) + l - 1);
  } else {
    std::printf("direct_gates n/a\n");
  }
  return kOk;
}

int cmd_encode(const std::string& path, const std::string& input, const std::string& mode,
               const std::string& outcome, const std::string& scheme, std::uint64_t seed) {
  const WeightedGraph graph = load_graph(path);
  const auto& inputs = graph.inputs();
  if (inputs.empty()) throw PreconditionError("graph has no input vertices");
  const StateVector state = basis_state(inputs, graph.d(), parse_digits(input, graph.d(), inputs.size()));
  if (scheme == "direct") {
    std::cout << dump_state(direct_encoding(graph, state), true);
    return kOk;
  }
  const WeightedGraph code_graph = strip_input_edges(graph);
  EncodingMode encoding = EncodingMode::all();
  if (mode == "branch") {
    if (outcome.empty()) throw PreconditionError("--mode branch needs --outcome");
    encoding = EncodingMode::branch(parse_digits(outcome, graph.d(), inputs.size()));
  } else if (mode == "sample") {
    encoding = EncodingMode::sample(seed);
  }
  for (const auto& branch : measured_encoding(code_graph, state, encoding)) {
    std::printf("outcome %s probability %.17g\n", format_digits(branch.outcome.digits, graph.d()).c_str(),
                branch.probability);
    std::cout << dump_state(branch.output, true);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qudit graph-state circuit synthesis and verification"};
  app.require_subcommand(1);

  std::string graph_path;
  std::string form;
  auto* synth = app.add_subcommand("synth", "Synthesize a netlist from a graph file");
  synth->add_option("--form", form, "cluster-phase | cluster-shift | encoder | direct")
      ->required()
      ->check(CLI::IsMember({"cluster-phase", "cluster-shift", "encoder", "direct"}));
  synth->add_option("graph", graph_path, "Graph JSON file")->required();

  std::string netlist_path;
  std::string init;
  bool dump = false;
  auto* simulate = app.add_subcommand("simulate", "Run a netlist on a basis state");
  simulate->add_option("netlist", netlist_path, "Netlist file")->required();
  simulate->add_option("--init", init, "Initial digit string (default all zeros)");
  simulate->add_flag("--dump", dump, "Print every amplitude, including zeros");

  std::string target;
  std::vector<std::string> checks;
  bool all_checks = false;
  bool json = false;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Check synthesized circuits against closed-form oracles");
  verify->add_option("target", target, "Graph JSON file or directory of them")->required();
  auto* all_flag = verify->add_flag("--all", all_checks, "Run every check (default)");
  verify->add_option("--check", checks, "Checks to run")
      ->check(CLI::IsMember(known_checks()))
      ->excludes(all_flag);
  verify->add_flag("--json", json, "Emit the report as JSON");
  verify->add_option("--seed", seed, "Seed for randomized checks");

  auto* stats = app.add_subcommand("stats", "Print graph sizes and predicted gate counts");
  stats->add_option("graph", graph_path, "Graph JSON file")->required();

  std::string input;
  std::string mode = "all";
  std::string outcome;
  std::string scheme = "measured";
  auto* encode = app.add_subcommand("encode", "Encode a basis input with a graph code");
  encode->add_option("graph", graph_path, "Graph JSON file")->required();
  encode->add_option("--input", input, "Input digits over the input vertices")->required();
  encode->add_option("--mode", mode, "all | branch | sample")->check(CLI::IsMember({"all", "branch", "sample"}));
  encode->add_option("--outcome", outcome, "Measurement outcome for --mode branch");
  auto* seed_opt = encode->add_option("--seed", seed, "Seed for --mode sample");
  encode->add_option("--scheme", scheme, "measured | direct")->check(CLI::IsMember({"measured", "direct"}));

  auto* dot = app.add_subcommand("dot", "Export a graph in DOT format");
  dot->add_option("graph", graph_path, "Graph JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*synth) return cmd_synth(graph_path, form);
    if (*simulate) return cmd_simulate(netlist_path, init, dump);
    if (*verify) return cmd_verify(target, checks, json, seed);
    if (*stats) return cmd_stats(graph_path);
    if (*encode) {
      if (mode == "sample" && seed_opt->count() == 0) {
        std::cerr << "error: --mode sample requires an explicit --seed\n";
        return kUsage;
      }
      return cmd_encode(graph_path, input, mode, outcome, scheme, seed);
    }
    if (*dot) {
      std::cout << export_dot(load_graph(graph_path));
      return kOk;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
