#pragma once

#include <vector>

#include "graphnet/circuit.hpp"
#include "graphnet/graph.hpp"

namespace graphnet {

/// One Fourier per vertex, then one CPhase per edge in (i, j) order.
Circuit synth_cluster_phase_form(const WeightedGraph& graph);

/// Vertex by vertex: F_j followed by CShift(j, k, Gamma(j,k)) for each later
/// neighbour k. Exactly v + l gates.
Circuit synth_cluster_shift_form(const WeightedGraph& graph);

/// Network realizing F_X u_Gamma F_X^* on the register with the inputs moved
/// to the front.
struct EncoderNetwork {
  Circuit circuit;
  /// wire_to_vertex[w] is the original vertex carried by wire w.
  std::vector<int> wire_to_vertex;
  /// Input-input edges dropped before synthesis.
  std::vector<Edge> removed_input_edges;
};

/// Throws PreconditionError when the graph has no inputs.
EncoderNetwork synth_encoder_network(const WeightedGraph& graph);

/// Output-only network z_Gamma for a single-input code. The data digit
/// (the first output, which must carry weight 1 to the input) is wire 0.
struct DirectEncoder {
  Circuit circuit;
  /// wire_to_vertex[w] is the original output vertex carried by wire w.
  std::vector<int> wire_to_vertex;
  int input_vertex = 0;
};

/// Throws PreconditionError unless there is exactly one input and the
/// weight between it and the first output is 1.
DirectEncoder synth_direct_encoder(const WeightedGraph& graph);

/// Circuit on the full register 0..n (input first) applying only the
/// controlled shifts out of the input vertex, c_0^Gamma.
Circuit input_shift_block(const WeightedGraph& graph);

/// The b_0^Gamma block of the direct encoder on the n output wires.
Circuit direct_shift_block(const WeightedGraph& graph);

}  // namespace graphnet
