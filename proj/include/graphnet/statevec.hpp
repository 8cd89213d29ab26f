#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphnet/circuit.hpp"
#include "graphnet/graph.hpp"
#include "graphnet/group.hpp"

namespace graphnet {

/// Largest dimension circuit_unitary will assemble.
inline constexpr std::size_t kMaxUnitaryDimension = 4096;
/// Largest state run() will simulate.
inline constexpr std::size_t kMaxStateDimension = std::size_t{1} << 20;

/// Amplitudes over Z_d^V in enumerate_group order (first vertex most
/// significant).
class StateVector {
 public:
  /// All-zero amplitudes.
  StateVector(int d, std::vector<int> vertices);
  StateVector(int d, std::vector<int> vertices, Eigen::VectorXcd amplitudes);

  int d() const { return d_; }
  const std::vector<int>& vertices() const { return vertices_; }
  std::size_t digit_count() const { return vertices_.size(); }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Eigen::VectorXcd& amplitudes() { return amplitudes_; }
  Complex amplitude(std::span<const int> digits) const;

  double norm() const { return amplitudes_.norm(); }

 private:
  int d_;
  std::vector<int> vertices_;
  Eigen::VectorXcd amplitudes_;
};

/// Dense matrix from l2(Z_d^domain) to l2(Z_d^codomain).
struct LinearMap {
  int d = 2;
  std::vector<int> domain;
  std::vector<int> codomain;
  Eigen::MatrixXcd matrix;

  LinearMap() = default;
  LinearMap(int d, std::vector<int> domain, std::vector<int> codomain, Eigen::MatrixXcd matrix);

  LinearMap adjoint() const;
};

/// a after b; throws if b's codomain is not a's domain.
LinearMap compose(const LinearMap& a, const LinearMap& b);
StateVector apply(const LinearMap& map, const StateVector& state);
LinearMap identity_map(int d, std::vector<int> vertices);

/// Vertices 0..n-1.
std::vector<int> iota_vertices(int n);

StateVector ground_state(std::vector<int> vertices, int d);
StateVector basis_state(std::vector<int> vertices, int d, std::span<const int> digits);

/// Gate wires index positions in the state's vertex list.
void apply_gate_in_place(StateVector& state, const Gate& gate);
StateVector apply_gate(const StateVector& state, const Gate& gate);

StateVector run(const Circuit& circuit, const StateVector& state);
/// Columns are run() on each basis state. Limited to kMaxUnitaryDimension.
LinearMap circuit_unitary(const Circuit& circuit);

/// Closed-form Psi_Gamma(g) = d^{-|V|/2} prod_{i<j} chi(g_i|g_j)^Gamma(i,j).
StateVector cluster_oracle(const WeightedGraph& graph);

/// Diagonal Phi_Gamma |g> = d^{|V|/2} Psi_Gamma(g) |g>.
LinearMap phase_operator(const WeightedGraph& graph);

/// Fourier transform on the digits in `subset`, identity on the rest of
/// `vertices`. Built from Kronecker products of single-digit matrices.
LinearMap fourier_op(const std::vector<int>& vertices, const std::vector<int>& subset, int d,
                     bool adjoint = false);

/// u(h)|h'> = |h' + h> on the vertices of h.
LinearMap shift_op(const MultiIndex& h);
/// u^(h)|h'> = chi(h|h')|h'> on the vertices of h.
LinearMap multiplier_op(const MultiIndex& h);

/// Tensors `op` with the identity on the remaining digits of `vertices`.
LinearMap extend(const LinearMap& op, const std::vector<int>& vertices);

/// Permutation of digit positions: output digit perm[k] takes input digit k.
LinearMap permutation_op(const std::vector<int>& perm, int d);

/// w_K Psi = |0_K> (x) Psi, placed on the sorted union of vertex lists.
StateVector embed_w(const StateVector& state, const std::vector<int>& zero_vertices);
/// w_K as a matrix with the given domain.
LinearMap embed_map(const std::vector<int>& domain, const std::vector<int>& zero_vertices, int d);

struct PostselectResult {
  StateVector state;  // unnormalized, on V \ K in the order of V
  double probability = 0.0;
};

/// Applies <h|_K (x) 1. The outcome's vertices are K.
PostselectResult postselect(const StateVector& state, const MultiIndex& outcome);

/// One line per basis element: `<digits> <re> <im>`, 17 significant digits.
/// With `skip_zero`, lines whose amplitude is exactly zero are omitted.
std::string dump_state(const StateVector& state, bool skip_zero = false);

/// Digit string for a configuration: plain digits when d <= 10, else comma
/// separated.
std::string format_digits(std::span<const int> digits, int d);
/// Inverse of format_digits. Throws std::invalid_argument on bad input.
std::vector<int> parse_digits(const std::string& text, int d, std::size_t length);

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace graphnet
