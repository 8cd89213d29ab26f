#include "graphnet/synth.hpp"

#include <string>

#include "graphnet/error.hpp"

namespace graphnet {

namespace {

void require_canonical(const WeightedGraph& graph) {
  if (!graph.is_canonical()) {
    throw PreconditionError("synthesis requires a canonicalized graph (weights in [0, d))");
  }
}

std::string wire_map_comment(const std::vector<int>& wire_to_vertex) {
  std::string text = "wires:";
  for (std::size_t w = 0; w < wire_to_vertex.size(); ++w) {
    text += " " + std::to_string(w) + "=v" + std::to_string(wire_to_vertex[w]);
  }
  return text;
}

// Checks the single-input preconditions and returns the graph relabeled so
// the input is vertex 0 and outputs follow in ascending order.
WeightedGraph single_input_layout(const WeightedGraph& graph, std::vector<int>* order) {
  require_canonical(graph);
  if (graph.inputs().size() != 1) {
    throw PreconditionError("direct encoder requires exactly one input vertex, graph has " +
                            std::to_string(graph.inputs().size()));
  }
  if (graph.vertex_count() < 2) {
    throw PreconditionError("direct encoder requires at least one output vertex");
  }
  *order = inputs_first_order(graph);
  std::vector<int> perm(order->size());
  for (std::size_t w = 0; w < order->size(); ++w) perm[static_cast<std::size_t>((*order)[w])] = static_cast<int>(w);
  WeightedGraph laid_out = relabel(graph, perm);
  if (laid_out.weight(0, 1) != 1) {
    throw PreconditionError("direct encoder requires Gamma(0,1) = 1 between the input vertex " +
                            std::to_string((*order)[0]) + " and the first output vertex " +
                            std::to_string((*order)[1]) + ", found " +
                            std::to_string(laid_out.weight(0, 1)));
  }
  return laid_out;
}

}  // namespace

Circuit synth_cluster_phase_form(const WeightedGraph& graph) {
  require_canonical(graph);
  Circuit circuit(graph.d(), graph.vertex_count());
  for (int j = 0; j < graph.vertex_count(); ++j) circuit.append(Gate::fourier(j));
  for (const Edge& e : graph.edges()) circuit.append(Gate::cphase(e.u, e.v, e.weight));
  return circuit;
}

Circuit synth_cluster_shift_form(const WeightedGraph& graph) {
  require_canonical(graph);
  const int v = graph.vertex_count();
  Circuit circuit(graph.d(), v);
  for (int j = 0; j < v; ++j) {
    circuit.append(Gate::fourier(j));
    for (int k = j + 1; k < v; ++k) {
      if (int w = graph.weight(j, k); w != 0) circuit.append(Gate::cshift(j, k, w));
    }
  }
  return circuit;
}

EncoderNetwork synth_encoder_network(const WeightedGraph& graph) {
  require_canonical(graph);
  if (graph.inputs().empty()) {
    throw PreconditionError("encoder network requires at least one input vertex");
  }
  EncoderNetwork result{Circuit(graph.d(), graph.vertex_count()), {}, {}};
  const WeightedGraph stripped = strip_input_edges(graph, &result.removed_input_edges);

  result.wire_to_vertex = inputs_first_order(stripped);
  std::vector<int> perm(result.wire_to_vertex.size());
  for (std::size_t w = 0; w < perm.size(); ++w) {
    perm[static_cast<std::size_t>(result.wire_to_vertex[w])] = static_cast<int>(w);
  }
  const WeightedGraph laid_out = relabel(stripped, perm);
  const int k = static_cast<int>(laid_out.inputs().size());
  const int v = laid_out.vertex_count();

  Circuit& circuit = result.circuit;
  circuit.add_comment(wire_map_comment(result.wire_to_vertex));
  for (const Edge& e : result.removed_input_edges) {
    circuit.add_comment("removed input edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
  }
  // Input blocks c_x^Gamma F_x; with no input-input edges each block only
  // reaches the outputs.
  for (int x = 0; x < k; ++x) {
    for (int y = k; y < v; ++y) {
      if (int w = laid_out.weight(x, y); w != 0) circuit.append(Gate::cshift(x, y, w));
    }
    circuit.append(Gate::fourier(x));
  }
  circuit.append(synth_cluster_shift_form(output_subgraph(laid_out)), k);
  return result;
}

Circuit input_shift_block(const WeightedGraph& graph) {
  std::vector<int> order;
  const WeightedGraph laid_out = single_input_layout(graph, &order);
  Circuit circuit(graph.d(), laid_out.vertex_count());
  for (int y = 1; y < laid_out.vertex_count(); ++y) {
    if (int w = laid_out.weight(0, y); w != 0) circuit.append(Gate::cshift(0, y, w));
  }
  return circuit;
}

Circuit direct_shift_block(const WeightedGraph& graph) {
  std::vector<int> order;
  const WeightedGraph laid_out = single_input_layout(graph, &order);
  const int n = laid_out.vertex_count() - 1;
  Circuit circuit(graph.d(), n);
  // Output vertex y sits on wire y - 1.
  for (int y = 2; y <= n; ++y) {
    if (int w = laid_out.weight(0, y); w != 0) circuit.append(Gate::cshift(0, y - 1, w));
  }
  return circuit;
}

DirectEncoder synth_direct_encoder(const WeightedGraph& graph) {
  std::vector<int> order;
  const WeightedGraph laid_out = single_input_layout(graph, &order);
  const int n = laid_out.vertex_count() - 1;

  DirectEncoder result{Circuit(graph.d(), n), {}, order[0]};
  result.wire_to_vertex.assign(order.begin() + 1, order.end());
  result.circuit.add_comment(wire_map_comment(result.wire_to_vertex) + " (data digit on wire 0, input v" +
                             std::to_string(order[0]) + ")");
  result.circuit.append(direct_shift_block(graph));
  result.circuit.append(synth_cluster_shift_form(output_subgraph(laid_out)));
  return result;
}

}  // namespace graphnet
