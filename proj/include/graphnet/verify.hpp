#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphnet/graph.hpp"

namespace graphnet {

struct CheckResult {
  enum class Status { Pass, Fail, Skip, Info };

  std::string name;
  double max_deviation = 0.0;
  Status status = Status::Pass;
  std::string detail;
};

struct VerifyOptions {
  std::vector<std::string> checks;  // empty: every check
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  int statistics_trials = 20;
};

struct GraphReport {
  std::string label;
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// cluster, gatecounts, phase-shift, lowering, encoder, isometry,
/// coding-identity, channel, statistics, direct, shift-block.
const std::vector<std::string>& known_checks();

GraphReport verify_graph(const WeightedGraph& graph, const VerifyOptions& options,
                         std::string label = "");

std::string format_report_text(const std::vector<GraphReport>& reports);
std::string format_report_json(const std::vector<GraphReport>& reports);

}  // namespace graphnet
