#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphnet/graph.hpp"
#include "graphnet/group.hpp"
#include "graphnet/statevec.hpp"

namespace graphnet {

/// Largest full-register dimension for which dense operator identities are
/// assembled.
inline constexpr std::size_t kMaxOracleDimension = 1024;

/// v_Gamma|h> = d^{|X|/2} sum_{g in Z_d^Y} Psi_Gamma(h, g) |g>, with domain X and
/// codomain Y in ascending vertex order. Throws PreconditionError without
/// inputs.
LinearMap encoder_oracle(const WeightedGraph& graph);

struct IsometryResult {
  bool isometric = false;
  double max_deviation = 0.0;  // max |M*M - I|
};

IsometryResult isometry_check(const LinearMap& map, double tolerance = 1e-10);

struct EncodingMode {
  enum class Kind { All, Branch, Sample };
  Kind kind = Kind::All;
  std::vector<int> outcome;  // Branch: digits over the inputs
  std::uint64_t seed = 0;    // Sample

  static EncodingMode all() { return {}; }
  static EncodingMode branch(std::vector<int> h) { return {Kind::Branch, std::move(h), 0}; }
  static EncodingMode sample(std::uint64_t seed) { return {Kind::Sample, {}, seed}; }
};

struct EncodingBranch {
  MultiIndex outcome;
  StateVector output;  // unnormalized, on the outputs
  double probability = 0.0;
};

/// Measured coding scheme: input on X, ground state on Y, the encoder
/// network, then a computational-basis measurement of X. `input` must be a
/// normalized state on graph.inputs(). Input-input edges are stripped first.
std::vector<EncodingBranch> measured_encoding(const WeightedGraph& graph, const StateVector& input,
                                              const EncodingMode& mode);

/// Loads `input` (a state on the single input vertex) on the data wire and
/// runs the direct encoder. The result lives on the output vertices.
StateVector direct_encoding(const WeightedGraph& graph, const StateVector& input);

/// A completely positive map with classical output, as one Kraus operator per
/// outcome: rho -> sum_h B_h rho B_h^* (x) |h><h|.
struct ChannelBranches {
  int d = 2;
  std::vector<int> inputs;
  std::vector<int> outputs;
  std::vector<MultiIndex> outcomes;
  std::vector<Eigen::MatrixXcd> kraus;
  /// Filled by channel_C from the isometry check of v_Gamma.
  bool isometric = true;
  double isometry_deviation = 0.0;
};

/// B_h = d^{-|X|/2} v_Gamma u^(h), or with u^(h)^* when `conjugate` is set.
ChannelBranches channel_C(const WeightedGraph& graph, bool conjugate = false);

/// Branches read off the measured_encoding pipeline column by column.
ChannelBranches channel_pipeline(const WeightedGraph& graph);

/// B (x) conj(B): the action of rho -> B rho B^* on row-major vec(rho).
Eigen::MatrixXcd superoperator(const Eigen::MatrixXcd& kraus);

/// Max entrywise difference of the per-outcome superoperators.
double superoperator_deviation(const ChannelBranches& a, const ChannelBranches& b);
/// Same for the outcome-summed channel.
double summed_superoperator_deviation(const ChannelBranches& a, const ChannelBranches& b);
/// Max entrywise difference of the Kraus operators themselves.
double branch_deviation(const ChannelBranches& a, const ChannelBranches& b);
/// Max |sum_h B_h^* B_h - I|.
double trace_preservation_deviation(const ChannelBranches& channel);

/// d^{|X|/2} w_X^* F_X u_Gamma F_X^* w_Y, or with the two Fourier factors
/// exchanged when `exchanged` is set.
LinearMap coding_identity_rhs(const WeightedGraph& graph, bool exchanged);

struct CodingIdentityReport {
  double forward_deviation = 0.0;    // F_X u F_X^* against v_Gamma
  double exchanged_deviation = 0.0;  // F_X^* u F_X against v_Gamma
  std::string matching_variant;      // "F_X u F_X*", "F_X* u F_X", "both" or "none"
  std::optional<double> shift_block_deviation;  // single-input graphs with Gamma(0,1)=1
};

CodingIdentityReport verify_coding_identity(const WeightedGraph& graph, double tolerance = 1e-10);

/// F_X u_Gamma F_X^* on the inputs-first layout of the input-edge-stripped
/// graph, from phase_operator and Fourier matrices.
LinearMap encoder_network_oracle(const WeightedGraph& graph);

/// max |z_Gamma w_{2..n} - v_Gamma|.
double direct_encoder_deviation(const WeightedGraph& graph);

/// max over h of |d^{1/2} w_0^* F_0 c_0 |h,0> - b_0 w_{2..n} |h>|.
double shift_block_deviation(const WeightedGraph& graph);

}  // namespace graphnet
