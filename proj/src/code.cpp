#include "graphnet/code.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "graphnet/error.hpp"
#include "graphnet/synth.hpp"

namespace graphnet {

namespace {

void require_inputs(const WeightedGraph& graph) {
  if (graph.inputs().empty()) throw PreconditionError("graph code requires at least one input vertex");
}

void require_oracle_size(const WeightedGraph& graph) {
  checked_pow(graph.d(), static_cast<std::size_t>(graph.vertex_count()), kMaxOracleDimension);
}

std::vector<int> range(int begin, int end) {
  std::vector<int> out;
  for (int k = begin; k < end; ++k) out.push_back(k);
  return out;
}

std::vector<int> inverse_permutation(const std::vector<int>& order) {
  std::vector<int> perm(order.size());
  for (std::size_t w = 0; w < order.size(); ++w) perm[static_cast<std::size_t>(order[w])] = static_cast<int>(w);
  return perm;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void require_same_shape(const ChannelBranches& a, const ChannelBranches& b) {
  if (a.d != b.d || a.inputs != b.inputs || a.outputs != b.outputs || a.kraus.size() != b.kraus.size()) {
    throw std::invalid_argument("channels act on different registers");
  }
}

}  // namespace

LinearMap encoder_oracle(const WeightedGraph& graph) {
  require_inputs(graph);
  const int d = graph.d();
  const auto inputs = graph.inputs();
  const auto outputs = graph.outputs();
  const StateVector psi = cluster_oracle(graph);
  const std::size_t cols = checked_pow(d, inputs.size());
  const std::size_t rows = checked_pow(d, outputs.size());
  const double scale = std::pow(static_cast<double>(d), 0.5 * static_cast<double>(inputs.size()));

  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::vector<int> full(static_cast<std::size_t>(graph.vertex_count()));
  for (std::size_t col = 0; col < cols; ++col) {
    const auto h = decode_index(col, inputs.size(), d);
    for (std::size_t k = 0; k < inputs.size(); ++k) full[static_cast<std::size_t>(inputs[k])] = h[k];
    for (std::size_t row = 0; row < rows; ++row) {
      const auto g = decode_index(row, outputs.size(), d);
      for (std::size_t k = 0; k < outputs.size(); ++k) full[static_cast<std::size_t>(outputs[k])] = g[k];
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = scale * psi.amplitude(full);
    }
  }
  return LinearMap(d, inputs, outputs, std::move(m));
}

IsometryResult isometry_check(const LinearMap& map, double tolerance) {
  const Eigen::MatrixXcd gram = map.matrix.adjoint() * map.matrix;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
  const double deviation = max_abs_diff(gram, id);
  return {deviation <= tolerance, deviation};
}

std::vector<EncodingBranch> measured_encoding(const WeightedGraph& graph, const StateVector& input,
                                              const EncodingMode& mode) {
  require_inputs(graph);
  const int d = graph.d();
  if (input.d() != d || input.vertices() != graph.inputs()) {
    throw PreconditionError("input state must live on the input vertices of the graph");
  }
  if (std::abs(input.norm() - 1.0) > 1e-10) {
    throw PreconditionError("input state is not normalized (norm " + std::to_string(input.norm()) + ")");
  }
  const int k = static_cast<int>(graph.inputs().size());
  const int v = graph.vertex_count();
  if (mode.kind == EncodingMode::Kind::Branch) {
    if (mode.outcome.size() != static_cast<std::size_t>(k)) {
      throw PreconditionError("outcome must have one digit per input vertex");
    }
    for (int g : mode.outcome) {
      if (g < 0 || g >= d) throw PreconditionError("outcome digit out of range");
    }
  }

  const EncoderNetwork network = synth_encoder_network(graph);
  const StateVector loaded(d, range(0, k), input.amplitudes());
  const StateVector final_state = run(network.circuit, embed_w(loaded, range(k, v)));

  std::vector<EncodingBranch> branches;
  const auto input_wires = range(0, k);
  for (const MultiIndex& h : enumerate_group(input_wires, d)) {
    if (mode.kind == EncodingMode::Kind::Branch && h.digits != mode.outcome) continue;
    PostselectResult selected = postselect(final_state, h);
    branches.push_back({MultiIndex(d, graph.inputs(), h.digits),
                        StateVector(d, graph.outputs(), std::move(selected.state.amplitudes())),
                        selected.probability});
  }

  if (mode.kind == EncodingMode::Kind::Sample) {
    std::mt19937_64 rng(mode.seed);
    double total = 0.0;
    for (const auto& b : branches) total += b.probability;
    const double r = std::uniform_real_distribution<double>(0.0, total)(rng);
    double cumulative = 0.0;
    std::size_t pick = branches.size() - 1;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      cumulative += branches[i].probability;
      if (r < cumulative && branches[i].probability > 0.0) {
        pick = i;
        break;
      }
    }
    while (pick > 0 && branches[pick].probability == 0.0) --pick;
    return {std::move(branches[pick])};
  }
  return branches;
}

StateVector direct_encoding(const WeightedGraph& graph, const StateVector& input) {
  const DirectEncoder encoder = synth_direct_encoder(graph);
  if (input.d() != graph.d() || input.vertices() != graph.inputs()) {
    throw PreconditionError("input state must live on the input vertex of the graph");
  }
  const int n = encoder.circuit.register_size();
  const StateVector loaded(graph.d(), {0}, input.amplitudes());
  const StateVector out = run(encoder.circuit, embed_w(loaded, range(1, n)));
  return StateVector(graph.d(), encoder.wire_to_vertex, out.amplitudes());
}

ChannelBranches channel_C(const WeightedGraph& graph, bool conjugate) {
  const LinearMap v = encoder_oracle(graph);
  const IsometryResult iso = isometry_check(v);
  ChannelBranches channel;
  channel.d = graph.d();
  channel.inputs = graph.inputs();
  channel.outputs = graph.outputs();
  channel.isometric = iso.isometric;
  channel.isometry_deviation = iso.max_deviation;
  const double scale = std::pow(static_cast<double>(graph.d()), -0.5 * static_cast<double>(channel.inputs.size()));
  for (const MultiIndex& h : enumerate_group(channel.inputs, graph.d())) {
    const LinearMap multiplier = multiplier_op(h);
    const Eigen::MatrixXcd correction = conjugate ? Eigen::MatrixXcd(multiplier.matrix.adjoint())
                                                  : multiplier.matrix;
    channel.outcomes.push_back(h);
    channel.kraus.push_back(scale * v.matrix * correction);
  }
  return channel;
}

ChannelBranches channel_pipeline(const WeightedGraph& graph) {
  require_inputs(graph);
  const int d = graph.d();
  ChannelBranches channel;
  channel.d = d;
  channel.inputs = graph.inputs();
  channel.outputs = graph.outputs();
  const std::size_t cols = checked_pow(d, channel.inputs.size());
  const std::size_t rows = checked_pow(d, channel.outputs.size());
  for (const MultiIndex& h : enumerate_group(channel.inputs, d)) {
    channel.outcomes.push_back(h);
    channel.kraus.push_back(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)));
  }
  for (std::size_t col = 0; col < cols; ++col) {
    StateVector basis(d, channel.inputs);
    basis.amplitudes()(static_cast<Eigen::Index>(col)) = 1.0;
    const auto branches = measured_encoding(graph, basis, EncodingMode::all());
    for (std::size_t b = 0; b < branches.size(); ++b) {
      channel.kraus[b].col(static_cast<Eigen::Index>(col)) = branches[b].output.amplitudes();
    }
  }
  return channel;
}

Eigen::MatrixXcd superoperator(const Eigen::MatrixXcd& kraus) {
  return kron(kraus, kraus.conjugate());
}

double superoperator_deviation(const ChannelBranches& a, const ChannelBranches& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.kraus.size(); ++k) {
    worst = std::max(worst, max_abs_diff(superoperator(a.kraus[k]), superoperator(b.kraus[k])));
  }
  return worst;
}

double summed_superoperator_deviation(const ChannelBranches& a, const ChannelBranches& b) {
  require_same_shape(a, b);
  if (a.kraus.empty()) return 0.0;
  Eigen::MatrixXcd sa = superoperator(a.kraus[0]);
  Eigen::MatrixXcd sb = superoperator(b.kraus[0]);
  for (std::size_t k = 1; k < a.kraus.size(); ++k) {
    sa += superoperator(a.kraus[k]);
    sb += superoperator(b.kraus[k]);
  }
  return max_abs_diff(sa, sb);
}

double branch_deviation(const ChannelBranches& a, const ChannelBranches& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.kraus.size(); ++k) worst = std::max(worst, max_abs_diff(a.kraus[k], b.kraus[k]));
  return worst;
}

double trace_preservation_deviation(const ChannelBranches& channel) {
  if (channel.kraus.empty()) return 0.0;
  const auto n = channel.kraus[0].cols();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& b : channel.kraus) sum += b.adjoint() * b;
  return max_abs_diff(sum, Eigen::MatrixXcd::Identity(n, n));
}

LinearMap coding_identity_rhs(const WeightedGraph& graph, bool exchanged) {
  require_inputs(graph);
  require_oracle_size(graph);
  const int d = graph.d();
  const auto all = range(0, graph.vertex_count());
  const auto inputs = graph.inputs();
  const auto outputs = graph.outputs();

  const LinearMap u = compose(phase_operator(graph), fourier_op(all, all, d));
  const LinearMap left = fourier_op(all, inputs, d, exchanged);
  const LinearMap right = fourier_op(all, inputs, d, !exchanged);
  const LinearMap w_outputs = embed_map(inputs, outputs, d);   // |h> -> |h, 0_Y>
  const LinearMap w_inputs = embed_map(outputs, inputs, d);    // |g> -> |0_X, g>

  const double scale = std::pow(static_cast<double>(d), 0.5 * static_cast<double>(inputs.size()));
  Eigen::MatrixXcd m = right.matrix * w_outputs.matrix;
  m = u.matrix * m;
  m = left.matrix * m;
  m = scale * (w_inputs.matrix.adjoint() * m);
  return LinearMap(d, inputs, outputs, std::move(m));
}

CodingIdentityReport verify_coding_identity(const WeightedGraph& graph, double tolerance) {
  const LinearMap v = encoder_oracle(graph);
  CodingIdentityReport report;
  report.forward_deviation = max_abs_diff(coding_identity_rhs(graph, false).matrix, v.matrix);
  report.exchanged_deviation = max_abs_diff(coding_identity_rhs(graph, true).matrix, v.matrix);
  const bool forward = report.forward_deviation <= tolerance;
  const bool exchanged = report.exchanged_deviation <= tolerance;
  report.matching_variant = forward && exchanged ? "both"
                            : forward            ? "F_X u F_X*"
                            : exchanged          ? "F_X* u F_X"
                                                 : "none";
  const auto outputs = graph.outputs();
  if (graph.inputs().size() == 1 && !outputs.empty() &&
      graph.weight(graph.inputs()[0], outputs[0]) == 1) {
    report.shift_block_deviation = shift_block_deviation(graph);
  }
  return report;
}

LinearMap encoder_network_oracle(const WeightedGraph& graph) {
  require_inputs(graph);
  require_oracle_size(graph);
  const WeightedGraph stripped = strip_input_edges(graph);
  const WeightedGraph laid_out = relabel(stripped, inverse_permutation(inputs_first_order(stripped)));
  const int d = graph.d();
  const auto all = range(0, graph.vertex_count());
  const auto inputs = range(0, static_cast<int>(graph.inputs().size()));

  const LinearMap u = compose(phase_operator(laid_out), fourier_op(all, all, d));
  return compose(fourier_op(all, inputs, d), compose(u, fourier_op(all, inputs, d, true)));
}

double direct_encoder_deviation(const WeightedGraph& graph) {
  const DirectEncoder encoder = synth_direct_encoder(graph);
  const int n = encoder.circuit.register_size();
  const LinearMap z = circuit_unitary(encoder.circuit);
  const LinearMap w = embed_map({0}, range(1, n), graph.d());
  return max_abs_diff(z.matrix * w.matrix, encoder_oracle(graph).matrix);
}

double shift_block_deviation(const WeightedGraph& graph) {
  const int d = graph.d();
  const Circuit c0 = input_shift_block(graph);
  const int n = c0.register_size() - 1;
  const auto full = range(0, n + 1);

  const LinearMap start = embed_map({0}, range(1, n + 1), d);          // |h, 0>
  const LinearMap project = embed_map(range(1, n + 1), {0}, d).adjoint();  // w_0^*
  const Eigen::MatrixXcd left = std::sqrt(static_cast<double>(d)) * project.matrix *
                                fourier_op(full, {0}, d).matrix * circuit_unitary(c0).matrix *
                                start.matrix;

  const LinearMap b0 = circuit_unitary(direct_shift_block(graph));
  const Eigen::MatrixXcd right = b0.matrix * embed_map({0}, range(1, n), d).matrix;
  return max_abs_diff(left, right);
}

}  // namespace graphnet
