#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace graphnet {

struct Edge {
  int u = 0;  // u < v
  int v = 0;
  int weight = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Symmetric integer weight matrix over vertices 0..v-1, a level count d and
/// an ordered set of input vertices. Outputs are the complement of the inputs.
///
/// Weights are arbitrary integers until canonicalize() reduces them to [0, d).
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(int d, int vertex_count);

  int d() const { return d_; }
  int vertex_count() const { return vertex_count_; }

  int weight(int i, int j) const;
  /// Sets both Gamma(i,j) and Gamma(j,i). Self-loops are rejected.
  void set_weight(int i, int j, int weight);

  const std::vector<int>& inputs() const { return inputs_; }
  /// Inputs are kept sorted ascending; duplicates and out-of-range indices throw.
  void set_inputs(std::vector<int> inputs);
  std::vector<int> outputs() const;
  bool is_input(int vertex) const;

  /// Unordered pairs with nonzero weight, sorted by (u, v).
  std::vector<Edge> edges() const;
  bool is_canonical() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  void check_vertex(int i) const;

  int d_ = 2;
  int vertex_count_ = 0;
  std::vector<int> weights_;
  std::vector<int> inputs_;
};

/// Parses the JSON graph format and returns the canonicalized graph.
/// Throws ParseError on malformed or invalid input.
WeightedGraph parse_graph(std::string_view text, std::vector<std::string>* warnings = nullptr);
/// Compact JSON with edges sorted by (min, max).
std::string serialize_graph(const WeightedGraph& graph);

/// Reduces every weight mod d; edges whose weight vanishes mod d are dropped
/// and reported through `warnings`.
WeightedGraph canonicalize(const WeightedGraph& graph, std::vector<std::string>* warnings = nullptr);

/// Zeroes Gamma(x, x') for all input pairs. Removed edges are appended to
/// `removed` when given.
WeightedGraph strip_input_edges(const WeightedGraph& graph, std::vector<Edge>* removed = nullptr);

/// Restriction to the outputs, re-indexed 0..|Y|-1 in ascending order, with
/// no inputs.
WeightedGraph output_subgraph(const WeightedGraph& graph);

/// Relabels vertex i as perm[i].
WeightedGraph relabel(const WeightedGraph& graph, const std::vector<int>& perm);

/// Relabeling that lists inputs first (ascending) then outputs (ascending).
/// Entry w is the original vertex placed at index w.
std::vector<int> inputs_first_order(const WeightedGraph& graph);

int edge_count(const WeightedGraph& graph);
int degree(const WeightedGraph& graph, int vertex);

std::string export_dot(const WeightedGraph& graph);

}  // namespace graphnet
