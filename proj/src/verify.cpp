#include "graphnet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>

#include "json.hpp"

#include "graphnet/code.hpp"
#include "graphnet/error.hpp"
#include "graphnet/statevec.hpp"
#include "graphnet/synth.hpp"

namespace graphnet {

namespace {

using Status = CheckResult::Status;

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
    case Status::Info: return "INFO";
  }
  return "?";
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CheckResult measured(std::string name, double deviation, double tolerance, std::string detail = "") {
  return {std::move(name), deviation, deviation <= tolerance ? Status::Pass : Status::Fail, std::move(detail)};
}

CheckResult skipped(std::string name, std::string why) {
  return {std::move(name), 0.0, Status::Skip, std::move(why)};
}

bool fits(const WeightedGraph& g, std::size_t limit) {
  try {
    checked_pow(g.d(), static_cast<std::size_t>(g.vertex_count()), limit);
    return true;
  } catch (const std::overflow_error&) {
    return false;
  }
}

bool direct_admissible(const WeightedGraph& g) {
  const auto outputs = g.outputs();
  return g.inputs().size() == 1 && !outputs.empty() && g.weight(g.inputs()[0], outputs[0]) == 1;
}

StateVector random_state(const std::vector<int>& vertices, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  StateVector state(d, vertices);
  for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i) state.amplitudes()(i) = Complex(normal(rng), normal(rng));
  state.amplitudes() /= state.norm();
  return state;
}

}  // namespace

bool GraphReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Fail; });
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "cluster", "gatecounts", "phase-shift", "lowering",   "encoder",    "isometry",
      "coding-identity", "channel", "statistics", "direct", "shift-block"};
  return names;
}

GraphReport verify_graph(const WeightedGraph& input_graph, const VerifyOptions& options, std::string label) {
  for (const auto& name : options.checks) {
    if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end()) {
      throw std::invalid_argument("unknown check \"" + name + "\"");
    }
  }
  auto wanted = [&](const std::string& name) {
    return options.checks.empty() ||
           std::find(options.checks.begin(), options.checks.end(), name) != options.checks.end();
  };

  const WeightedGraph graph = canonicalize(input_graph);
  std::vector<Edge> removed;
  const WeightedGraph code_graph = strip_input_edges(graph, &removed);
  const bool has_inputs = !graph.inputs().empty();
  const bool small = fits(graph, kMaxOracleDimension);
  const double tol = options.tolerance;

  GraphReport report;
  report.label = std::move(label);
  auto& out = report.checks;

  if (wanted("cluster")) {
    if (fits(graph, kMaxStateDimension)) {
      const StateVector ran = run(synth_cluster_shift_form(graph), ground_state(iota_vertices(graph.vertex_count()), graph.d()));
      out.push_back(measured("cluster", max_abs_diff(ran.amplitudes(), cluster_oracle(graph).amplitudes()), tol));
    } else {
      out.push_back(skipped("cluster", "register too large"));
    }
  }

  if (wanted("gatecounts")) {
    const int v = graph.vertex_count();
    const int l = edge_count(graph);
    const GateCount shift = gate_count(synth_cluster_shift_form(graph));
    const GateCount phase = gate_count(synth_cluster_phase_form(graph));
    double worst = std::max({std::abs(shift.total - (v + l)), std::abs(shift.fourier - v),
                             std::abs(shift.cshift - l), std::abs(phase.total - (v + l)),
                             std::abs(phase.fourier - v), std::abs(phase.cphase - l)}) * 1.0;
    std::string detail = "cluster " + std::to_string(shift.total) + "/" + std::to_string(v + l);
    if (has_inputs) {
      const int expected = v + edge_count(code_graph);
      const int got = gate_count(synth_encoder_network(graph).circuit).total;
      worst = std::max(worst, std::abs(got - expected) * 1.0);
      detail += ", encoder " + std::to_string(got) + "/" + std::to_string(expected);
    }
    if (direct_admissible(graph)) {
      const int n = v - 1;
      const int got = gate_count(synth_direct_encoder(graph).circuit).total;
      worst = std::max(worst, std::abs(got - (n + l - 1)) * 1.0);
      detail += ", direct " + std::to_string(got) + "/" + std::to_string(n + l - 1);
    }
    out.push_back({"gatecounts", worst, worst == 0.0 ? Status::Pass : Status::Fail, detail});
  }

  if (wanted("phase-shift")) {
    if (fits(graph, kMaxUnitaryDimension)) {
      out.push_back(measured("phase-shift",
                             max_abs_diff(circuit_unitary(synth_cluster_phase_form(graph)).matrix,
                                          circuit_unitary(synth_cluster_shift_form(graph)).matrix),
                             tol));
    } else {
      out.push_back(skipped("phase-shift", "register too large"));
    }
  }

  if (wanted("lowering")) {
    if (fits(graph, kMaxUnitaryDimension)) {
      const Circuit lowered = lower_phases(synth_cluster_phase_form(graph));
      const Circuit shift = synth_cluster_shift_form(graph);
      const bool identical = emit_netlist(lowered) == emit_netlist(shift);
      out.push_back(measured("lowering",
                             max_abs_diff(circuit_unitary(lowered).matrix, circuit_unitary(shift).matrix), tol,
                             identical ? "netlist identical to shift form" : "netlist differs, unitary compared"));
    } else {
      out.push_back(skipped("lowering", "register too large"));
    }
  }

  const std::string stripped_note =
      removed.empty() ? "" : std::to_string(removed.size()) + " input-input edge(s) stripped";
  auto code_check = [&](const std::string& name, const std::function<CheckResult()>& body) {
    if (!wanted(name)) return;
    if (!has_inputs) {
      out.push_back(skipped(name, "graph has no inputs"));
    } else if (!small) {
      out.push_back(skipped(name, "register too large for dense verification"));
    } else {
      CheckResult r = body();
      if (!stripped_note.empty()) r.detail += (r.detail.empty() ? "" : "; ") + stripped_note;
      out.push_back(std::move(r));
    }
  };

  code_check("encoder", [&] {
    return measured("encoder",
                    max_abs_diff(circuit_unitary(synth_encoder_network(code_graph).circuit).matrix,
                                 encoder_network_oracle(code_graph).matrix),
                    tol);
  });

  IsometryResult iso{};
  if (has_inputs && small) iso = isometry_check(encoder_oracle(code_graph), tol);
  code_check("isometry", [&] { return measured("isometry", iso.max_deviation, tol); });

  if (wanted("coding-identity") && has_inputs && small) {
    const CodingIdentityReport p = verify_coding_identity(code_graph, tol);
    out.push_back(measured("coding-identity", p.forward_deviation, tol, "matching variant: " + p.matching_variant));
    out.push_back({"coding-identity-exchanged", p.exchanged_deviation, Status::Info,
                   p.exchanged_deviation <= tol ? "F_X* u F_X matches" : "F_X* u F_X does not match"});
  } else {
    code_check("coding-identity", [] { return CheckResult{}; });
  }

  code_check("channel", [&] {
    const ChannelBranches formula = channel_C(code_graph);
    const ChannelBranches pipeline = channel_pipeline(code_graph);
    const double per_branch = superoperator_deviation(formula, pipeline);
    const double summed = summed_superoperator_deviation(formula, pipeline);
    const double kraus = branch_deviation(formula, pipeline);
    const double kraus_conj = branch_deviation(channel_C(code_graph, true), pipeline);
    return measured("channel", std::max(per_branch, summed), tol,
                    "branch correction u^(h): " + format_double(kraus) + ", u^(h)*: " + format_double(kraus_conj));
  });

  code_check("statistics", [&] {
    if (!iso.isometric) return skipped("statistics", "code is not isometric");
    std::mt19937_64 rng(options.seed);
    const double expected = std::pow(static_cast<double>(graph.d()), -static_cast<double>(graph.inputs().size()));
    double worst = 0.0;
    for (int trial = 0; trial < options.statistics_trials; ++trial) {
      const StateVector input = random_state(code_graph.inputs(), graph.d(), rng);
      for (const auto& branch : measured_encoding(code_graph, input, EncodingMode::all())) {
        worst = std::max(worst, std::abs(branch.probability - expected));
      }
    }
    return measured("statistics", worst, tol, std::to_string(options.statistics_trials) + " random inputs");
  });

  auto direct_check = [&](const std::string& name, const std::function<double()>& body) {
    if (!wanted(name)) return;
    if (!direct_admissible(graph)) {
      out.push_back(skipped(name, "needs one input joined to the first output with weight 1"));
    } else if (!fits(graph, kMaxUnitaryDimension)) {
      out.push_back(skipped(name, "register too large"));
    } else {
      out.push_back(measured(name, body(), tol));
    }
  };
  direct_check("direct", [&] { return direct_encoder_deviation(graph); });
  direct_check("shift-block", [&] { return shift_block_deviation(graph); });

  return report;
}

std::string format_report_text(const std::vector<GraphReport>& reports) {
  std::string text;
  char buf[160];
  for (const auto& report : reports) {
    if (!report.label.empty()) text += "graph " + report.label + "\n";
    for (const auto& c : report.checks) {
      std::snprintf(buf, sizeof buf, "%-26s %-24s %s", c.name.c_str(), format_double(c.max_deviation).c_str(),
                    status_name(c.status));
      text += buf;
      if (!c.detail.empty()) text += "  " + c.detail;
      text += "\n";
    }
    text += report.passed() ? "result PASS\n" : "result FAIL\n";
  }
  return text;
}

std::string format_report_json(const std::vector<GraphReport>& reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& report : reports) {
    nlohmann::ordered_json entry;
    entry["graph"] = report.label;
    entry["passed"] = report.passed();
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
      nlohmann::ordered_json item;
      item["name"] = c.name;
      item["max_deviation"] = c.max_deviation;
      item["status"] = status_name(c.status);
      item["detail"] = c.detail;
      checks.push_back(std::move(item));
    }
    entry["checks"] = std::move(checks);
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace graphnet
