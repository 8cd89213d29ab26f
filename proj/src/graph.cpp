#include "graphnet/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "graphnet/error.hpp"
#include "graphnet/group.hpp"

namespace graphnet {

WeightedGraph::WeightedGraph(int d, int vertex_count)
    : d_(d), vertex_count_(vertex_count) {
  if (d < 2) throw std::invalid_argument("level count d must be at least 2");
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  weights_.assign(static_cast<std::size_t>(vertex_count) * vertex_count, 0);
}

void WeightedGraph::check_vertex(int i) const {
  if (i < 0 || i >= vertex_count_) {
    throw std::out_of_range("vertex " + std::to_string(i) + " out of range for " +
                            std::to_string(vertex_count_) + " vertices");
  }
}

int WeightedGraph::weight(int i, int j) const {
  check_vertex(i);
  check_vertex(j);
  return weights_[static_cast<std::size_t>(i) * vertex_count_ + j];
}

void WeightedGraph::set_weight(int i, int j, int weight) {
  check_vertex(i);
  check_vertex(j);
  if (i == j) throw std::invalid_argument("self-loop on vertex " + std::to_string(i));
  weights_[static_cast<std::size_t>(i) * vertex_count_ + j] = weight;
  weights_[static_cast<std::size_t>(j) * vertex_count_ + i] = weight;
}

void WeightedGraph::set_inputs(std::vector<int> inputs) {
  std::sort(inputs.begin(), inputs.end());
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    check_vertex(inputs[k]);
    if (k > 0 && inputs[k] == inputs[k - 1]) {
      throw std::invalid_argument("duplicate input vertex " + std::to_string(inputs[k]));
    }
  }
  inputs_ = std::move(inputs);
}

bool WeightedGraph::is_input(int vertex) const {
  return std::binary_search(inputs_.begin(), inputs_.end(), vertex);
}

std::vector<int> WeightedGraph::outputs() const {
  std::vector<int> result;
  for (int i = 0; i < vertex_count_; ++i) {
    if (!is_input(i)) result.push_back(i);
  }
  return result;
}

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> result;
  for (int i = 0; i < vertex_count_; ++i) {
    for (int j = i + 1; j < vertex_count_; ++j) {
      if (int w = weight(i, j); w != 0) result.push_back({i, j, w});
    }
  }
  return result;
}

bool WeightedGraph::is_canonical() const {
  return std::all_of(weights_.begin(), weights_.end(), [&](int w) { return w >= 0 && w < d_; });
}

WeightedGraph canonicalize(const WeightedGraph& graph, std::vector<std::string>* warnings) {
  WeightedGraph result = graph;
  for (const Edge& e : graph.edges()) {
    const int reduced = mod_d(e.weight, graph.d());
    if (reduced == 0 && warnings != nullptr) {
      warnings->push_back("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") has weight " + std::to_string(e.weight) + " = 0 mod " +
                          std::to_string(graph.d()) + "; removed");
    }
    result.set_weight(e.u, e.v, reduced);
  }
  return result;
}

WeightedGraph strip_input_edges(const WeightedGraph& graph, std::vector<Edge>* removed) {
  WeightedGraph result = graph;
  for (const Edge& e : graph.edges()) {
    if (graph.is_input(e.u) && graph.is_input(e.v)) {
      result.set_weight(e.u, e.v, 0);
      if (removed != nullptr) removed->push_back(e);
    }
  }
  return result;
}

WeightedGraph output_subgraph(const WeightedGraph& graph) {
  const std::vector<int> outputs = graph.outputs();
  WeightedGraph result(graph.d(), static_cast<int>(outputs.size()));
  for (std::size_t a = 0; a < outputs.size(); ++a) {
    for (std::size_t b = a + 1; b < outputs.size(); ++b) {
      result.set_weight(static_cast<int>(a), static_cast<int>(b),
                        graph.weight(outputs[a], outputs[b]));
    }
  }
  return result;
}

WeightedGraph relabel(const WeightedGraph& graph, const std::vector<int>& perm) {
  const int n = graph.vertex_count();
  if (static_cast<int>(perm.size()) != n) {
    throw std::invalid_argument("relabeling has the wrong length");
  }
  std::vector<int> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]++) throw std::invalid_argument("relabeling is not a permutation");
  }
  WeightedGraph result(graph.d(), n);
  for (const Edge& e : graph.edges()) result.set_weight(perm[e.u], perm[e.v], e.weight);
  std::vector<int> inputs;
  for (int x : graph.inputs()) inputs.push_back(perm[x]);
  result.set_inputs(std::move(inputs));
  return result;
}

std::vector<int> inputs_first_order(const WeightedGraph& graph) {
  std::vector<int> order = graph.inputs();
  for (int y : graph.outputs()) order.push_back(y);
  return order;
}

int edge_count(const WeightedGraph& graph) {
  return static_cast<int>(graph.edges().size());
}

int degree(const WeightedGraph& graph, int vertex) {
  int count = 0;
  for (int k = 0; k < graph.vertex_count(); ++k) {
    if (k != vertex && graph.weight(vertex, k) != 0) ++count;
  }
  return count;
}

namespace {

int as_int(const nlohmann::json& value, const char* what) {
  if (!value.is_number_integer()) {
    throw ParseError(std::string(what) + " must be an integer");
  }
  const auto raw = value.get<std::int64_t>();
  if (raw < INT32_MIN || raw > INT32_MAX) throw ParseError(std::string(what) + " out of range");
  return static_cast<int>(raw);
}

}  // namespace

WeightedGraph parse_graph(std::string_view text, std::vector<std::string>* warnings) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("graph file must contain a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "d" && key != "vertices" && key != "edges" && key != "inputs") {
      throw ParseError("unknown key \"" + key + "\" in graph file");
    }
  }
  for (const char* key : {"d", "vertices", "edges", "inputs"}) {
    if (!doc.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  }

  const int d = as_int(doc["d"], "d");
  if (d < 2) throw ParseError("d must be at least 2, got " + std::to_string(d));
  const int vertices = as_int(doc["vertices"], "vertices");
  if (vertices < 1) throw ParseError("a graph needs at least one vertex");

  WeightedGraph graph(d, vertices);
  if (!doc["edges"].is_array()) throw ParseError("\"edges\" must be an array");
  std::map<std::pair<int, int>, int> seen;
  for (const auto& entry : doc["edges"]) {
    if (!entry.is_array() || entry.size() != 3) {
      throw ParseError("each edge must be an [i, j, weight] triple");
    }
    const int i = as_int(entry[0], "edge endpoint");
    const int j = as_int(entry[1], "edge endpoint");
    const int w = as_int(entry[2], "edge weight");
    if (i < 0 || i >= vertices || j < 0 || j >= vertices) {
      throw ParseError("edge [" + std::to_string(i) + "," + std::to_string(j) +
                       "] references a vertex out of range");
    }
    if (i == j) throw ParseError("self-loop on vertex " + std::to_string(i));
    const auto key = std::minmax(i, j);
    if (auto it = seen.find(key); it != seen.end()) {
      if (it->second != w) {
        throw ParseError("conflicting weights for edge (" + std::to_string(key.first) + "," +
                         std::to_string(key.second) + ")");
      }
      continue;
    }
    seen.emplace(key, w);
    graph.set_weight(i, j, w);
  }

  if (!doc["inputs"].is_array()) throw ParseError("\"inputs\" must be an array");
  std::vector<int> inputs;
  for (const auto& entry : doc["inputs"]) {
    const int x = as_int(entry, "input vertex");
    if (x < 0 || x >= vertices) {
      throw ParseError("input vertex " + std::to_string(x) + " out of range");
    }
    if (std::find(inputs.begin(), inputs.end(), x) != inputs.end()) {
      throw ParseError("duplicate input vertex " + std::to_string(x));
    }
    inputs.push_back(x);
  }
  graph.set_inputs(std::move(inputs));
  return canonicalize(graph, warnings);
}

std::string serialize_graph(const WeightedGraph& graph) {
  nlohmann::ordered_json doc;
  doc["d"] = graph.d();
  doc["vertices"] = graph.vertex_count();
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : graph.edges()) edges.push_back({e.u, e.v, e.weight});
  doc["edges"] = std::move(edges);
  doc["inputs"] = graph.inputs();
  return doc.dump() + "\n";
}

std::string export_dot(const WeightedGraph& graph) {
  std::ostringstream out;
  out << "graph G {\n";
  for (int i = 0; i < graph.vertex_count(); ++i) {
    out << "  " << i;
    if (graph.is_input(i)) out << " [shape=box]";
    out << ";\n";
  }
  for (const Edge& e : graph.edges()) {
    out << "  " << e.u << " -- " << e.v << " [label=\"" << e.weight << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace graphnet
