#include "graphnet/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace graphnet {

namespace {

std::size_t dimension_of(int d, std::size_t digits, std::size_t limit = kMaxStateDimension) {
  return checked_pow(d, digits, limit);
}

std::vector<std::size_t> strides_for(int d, std::size_t n) {
  std::vector<std::size_t> strides(n, 1);
  for (std::size_t k = n; k-- > 1;) strides[k - 1] = strides[k] * static_cast<std::size_t>(d);
  return strides;
}

// Position of each vertex of `part` within `whole`.
std::vector<std::size_t> positions_in(const std::vector<int>& part, const std::vector<int>& whole) {
  std::vector<std::size_t> positions;
  positions.reserve(part.size());
  for (int v : part) {
    auto it = std::find(whole.begin(), whole.end(), v);
    if (it == whole.end()) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " not in register");
    }
    positions.push_back(static_cast<std::size_t>(it - whole.begin()));
  }
  return positions;
}

Eigen::MatrixXcd single_digit_fourier(int d, bool adjoint) {
  Eigen::MatrixXcd f(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int h = 0; h < d; ++h) {
    for (int g = 0; g < d; ++g) {
      // F|g> = d^{-1/2} sum_h chi(g|h) |h>, so entry (h, g).
      const Complex c = chi(g, h, d) * scale;
      f(h, g) = adjoint ? std::conj(c) : c;
    }
  }
  return f;
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

}  // namespace

StateVector::StateVector(int d, std::vector<int> vertices)
    : d_(d), vertices_(std::move(vertices)) {
  amplitudes_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dimension_of(d_, vertices_.size())));
}

StateVector::StateVector(int d, std::vector<int> vertices, Eigen::VectorXcd amplitudes)
    : d_(d), vertices_(std::move(vertices)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != dimension_of(d_, vertices_.size())) {
    throw std::invalid_argument("amplitude count does not match d^|V|");
  }
}

Complex StateVector::amplitude(std::span<const int> digits) const {
  if (digits.size() != vertices_.size()) throw std::invalid_argument("digit count mismatch");
  return amplitudes_(static_cast<Eigen::Index>(encode_digits(digits, d_)));
}

LinearMap::LinearMap(int d_, std::vector<int> domain_, std::vector<int> codomain_, Eigen::MatrixXcd matrix_)
    : d(d_), domain(std::move(domain_)), codomain(std::move(codomain_)), matrix(std::move(matrix_)) {
  if (static_cast<std::size_t>(matrix.cols()) != checked_pow(d, domain.size()) ||
      static_cast<std::size_t>(matrix.rows()) != checked_pow(d, codomain.size())) {
    throw std::invalid_argument("matrix shape does not match domain/codomain registers");
  }
}

LinearMap LinearMap::adjoint() const {
  return LinearMap(d, codomain, domain, matrix.adjoint());
}

LinearMap compose(const LinearMap& a, const LinearMap& b) {
  if (a.d != b.d || a.domain != b.codomain) {
    throw std::invalid_argument("compose: register mismatch");
  }
  return LinearMap(a.d, b.domain, a.codomain, a.matrix * b.matrix);
}

StateVector apply(const LinearMap& map, const StateVector& state) {
  if (map.d != state.d() || map.domain != state.vertices()) {
    throw std::invalid_argument("apply: state register does not match map domain");
  }
  return StateVector(map.d, map.codomain, map.matrix * state.amplitudes());
}

LinearMap identity_map(int d, std::vector<int> vertices) {
  const auto n = static_cast<Eigen::Index>(dimension_of(d, vertices.size()));
  return LinearMap(d, vertices, vertices, Eigen::MatrixXcd::Identity(n, n));
}

std::vector<int> iota_vertices(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = k;
  return v;
}

StateVector ground_state(std::vector<int> vertices, int d) {
  StateVector state(d, std::move(vertices));
  state.amplitudes()(0) = 1.0;
  return state;
}

StateVector basis_state(std::vector<int> vertices, int d, std::span<const int> digits) {
  if (digits.size() != vertices.size()) throw std::invalid_argument("basis_state: digit count mismatch");
  for (int g : digits) {
    if (g < 0 || g >= d) throw std::invalid_argument("basis_state: digit out of range");
  }
  StateVector state(d, std::move(vertices));
  state.amplitudes()(static_cast<Eigen::Index>(encode_digits(digits, d))) = 1.0;
  return state;
}

namespace {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Applies `gate` to the row index of `a`; each column is an independent
// state over `digits` digits.
void apply_gate_rows(RowMatrix& a, int d, std::size_t digits, const Gate& gate) {
  const std::size_t du = static_cast<std::size_t>(d);
  const std::size_t n = static_cast<std::size_t>(a.rows());
  const auto strides = strides_for(d, digits);
  auto row = [&](std::size_t i) { return a.row(static_cast<Eigen::Index>(i)); };

  // Visits every index whose digit on `wire` is zero.
  auto for_each_fiber = [&](int wire, auto&& body) {
    const std::size_t stride = strides[static_cast<std::size_t>(wire)];
    const std::size_t block = stride * du;
    for (std::size_t hi = 0; hi < n; hi += block) {
      for (std::size_t lo = 0; lo < stride; ++lo) body(hi + lo, stride);
    }
  };

  RowMatrix fiber(static_cast<Eigen::Index>(du), a.cols());
  switch (gate.kind) {
    case GateKind::Fourier:
    case GateKind::FourierInv: {
      const Eigen::MatrixXcd f = single_digit_fourier(d, gate.kind == GateKind::FourierInv);
      RowMatrix mixed(fiber.rows(), fiber.cols());
      for_each_fiber(gate.first, [&](std::size_t base, std::size_t stride) {
        for (std::size_t g = 0; g < du; ++g) fiber.row(static_cast<Eigen::Index>(g)) = row(base + g * stride);
        mixed.noalias() = f * fiber;
        for (std::size_t h = 0; h < du; ++h) row(base + h * stride) = mixed.row(static_cast<Eigen::Index>(h));
      });
      break;
    }
    case GateKind::CShift: {
      const std::size_t control_stride = strides[static_cast<std::size_t>(gate.first)];
      for_each_fiber(gate.second, [&](std::size_t base, std::size_t stride) {
        const std::size_t control = (base / control_stride) % du;
        const std::size_t shift = (static_cast<std::size_t>(gate.power) * control) % du;
        if (shift == 0) return;
        for (std::size_t g = 0; g < du; ++g) fiber.row(static_cast<Eigen::Index>(g)) = row(base + g * stride);
        for (std::size_t g = 0; g < du; ++g) {
          row(base + ((g + shift) % du) * stride) = fiber.row(static_cast<Eigen::Index>(g));
        }
      });
      break;
    }
    case GateKind::CPhase: {
      std::vector<Complex> phase(du);
      for (int k = 0; k < d; ++k) phase[static_cast<std::size_t>(k)] = chi(k, 1, d);
      const std::size_t si = strides[static_cast<std::size_t>(gate.first)];
      const std::size_t sj = strides[static_cast<std::size_t>(gate.second)];
      for (std::size_t idx = 0; idx < n; ++idx) {
        const std::size_t gi = (idx / si) % du;
        const std::size_t gj = (idx / sj) % du;
        const std::size_t k = (gi * gj % du) * static_cast<std::size_t>(gate.power) % du;
        if (k != 0) row(idx) *= phase[k];
      }
      break;
    }
  }
}

void check_gate(std::size_t digits, const Gate& gate) {
  auto check_wire = [&](int wire) {
    if (wire < 0 || static_cast<std::size_t>(wire) >= digits) {
      throw std::out_of_range("gate wire " + std::to_string(wire) + " outside register of " +
                              std::to_string(digits));
    }
  };
  check_wire(gate.first);
  if (gate.is_two_digit()) {
    check_wire(gate.second);
    if (gate.first == gate.second) throw std::invalid_argument("control equals target");
  }
}

}  // namespace

void apply_gate_in_place(StateVector& state, const Gate& gate) {
  check_gate(state.digit_count(), gate);
  RowMatrix column = state.amplitudes();
  apply_gate_rows(column, state.d(), state.digit_count(), gate);
  state.amplitudes() = column.col(0);
}

StateVector apply_gate(const StateVector& state, const Gate& gate) {
  StateVector out = state;
  apply_gate_in_place(out, gate);
  return out;
}

StateVector run(const Circuit& circuit, const StateVector& state) {
  if (state.d() != circuit.d() ||
      state.digit_count() != static_cast<std::size_t>(circuit.register_size())) {
    throw std::invalid_argument("run: state register does not match circuit (d=" +
                                std::to_string(circuit.d()) + ", q=" +
                                std::to_string(circuit.register_size()) + ")");
  }
  RowMatrix column = state.amplitudes();
  for (const Gate& g : circuit.gates()) {
    check_gate(state.digit_count(), g);
    apply_gate_rows(column, state.d(), state.digit_count(), g);
  }
  return StateVector(state.d(), state.vertices(), column.col(0));
}

LinearMap circuit_unitary(const Circuit& circuit) {
  const std::size_t n = checked_pow(circuit.d(), static_cast<std::size_t>(circuit.register_size()),
                                    kMaxUnitaryDimension);
  const auto digits = static_cast<std::size_t>(circuit.register_size());
  for (const Gate& g : circuit.gates()) check_gate(digits, g);
  // Column blocks small enough to stay in cache across all gates.
  const auto size = static_cast<Eigen::Index>(n);
  const Eigen::Index chunk = 32;
  Eigen::MatrixXcd u(size, size);
  for (Eigen::Index first = 0; first < size; first += chunk) {
    const Eigen::Index width = std::min(chunk, size - first);
    RowMatrix block = RowMatrix::Zero(size, width);
    for (Eigen::Index c = 0; c < width; ++c) block(first + c, c) = 1.0;
    for (const Gate& g : circuit.gates()) apply_gate_rows(block, circuit.d(), digits, g);
    u.middleCols(first, width) = block;
  }
  const auto wires = iota_vertices(circuit.register_size());
  return LinearMap(circuit.d(), wires, wires, std::move(u));
}

StateVector cluster_oracle(const WeightedGraph& graph) {
  const int d = graph.d();
  const auto vertices = iota_vertices(graph.vertex_count());
  const auto edges = graph.edges();
  StateVector state(d, vertices);
  const double scale = std::pow(static_cast<double>(d), -0.5 * graph.vertex_count());
  for (std::size_t idx = 0; idx < state.dimension(); ++idx) {
    const auto g = decode_index(idx, vertices.size(), d);
    std::int64_t exponent = 0;
    for (const Edge& e : edges) {
      exponent += static_cast<std::int64_t>(e.weight) * g[static_cast<std::size_t>(e.u)] *
                  g[static_cast<std::size_t>(e.v)];
    }
    state.amplitudes()(static_cast<Eigen::Index>(idx)) = scale * chi(exponent, 1, d);
  }
  return state;
}

LinearMap phase_operator(const WeightedGraph& graph) {
  const StateVector psi = cluster_oracle(graph);
  const double scale = std::pow(static_cast<double>(graph.d()), 0.5 * graph.vertex_count());
  Eigen::MatrixXcd diag = (scale * psi.amplitudes()).asDiagonal();
  return LinearMap(graph.d(), psi.vertices(), psi.vertices(), std::move(diag));
}

LinearMap fourier_op(const std::vector<int>& vertices, const std::vector<int>& subset, int d,
                     bool adjoint) {
  const Eigen::MatrixXcd f = single_digit_fourier(d, adjoint);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  for (int k : subset) positions_in({k}, vertices);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int v : vertices) {
    const bool hit = std::find(subset.begin(), subset.end(), v) != subset.end();
    m = kron(m, hit ? f : id);
  }
  return LinearMap(d, vertices, vertices, std::move(m));
}

LinearMap shift_op(const MultiIndex& h) {
  const std::size_t n = dimension_of(h.d, h.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t col = 0; col < n; ++col) {
    auto g = decode_index(col, h.size(), h.d);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = mod_d(g[k] + h.digits[k], h.d);
    m(static_cast<Eigen::Index>(encode_digits(g, h.d)), static_cast<Eigen::Index>(col)) = 1.0;
  }
  return LinearMap(h.d, h.vertices, h.vertices, std::move(m));
}

LinearMap multiplier_op(const MultiIndex& h) {
  const std::size_t n = dimension_of(h.d, h.size());
  Eigen::VectorXcd diag(static_cast<Eigen::Index>(n));
  for (std::size_t idx = 0; idx < n; ++idx) {
    const MultiIndex other(h.d, h.vertices, decode_index(idx, h.size(), h.d));
    diag(static_cast<Eigen::Index>(idx)) = chi_tuple(h, other);
  }
  return LinearMap(h.d, h.vertices, h.vertices, diag.asDiagonal());
}

LinearMap extend(const LinearMap& op, const std::vector<int>& vertices) {
  if (op.domain != op.codomain) throw std::invalid_argument("extend: operator must be square on one register");
  const int d = op.d;
  const auto local = positions_in(op.domain, vertices);
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (std::find(local.begin(), local.end(), k) == local.end()) rest.push_back(k);
  }
  const std::size_t n = dimension_of(d, vertices.size(), kMaxUnitaryDimension);
  const std::size_t m = static_cast<std::size_t>(op.matrix.rows());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t col = 0; col < n; ++col) {
    auto g = decode_index(col, vertices.size(), d);
    std::vector<int> sub(local.size());
    for (std::size_t k = 0; k < local.size(); ++k) sub[k] = g[local[k]];
    const std::size_t sub_col = encode_digits(sub, d);
    for (std::size_t row = 0; row < m; ++row) {
      const Complex c = op.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(sub_col));
      if (c == Complex(0.0)) continue;
      const auto out_digits = decode_index(row, local.size(), d);
      for (std::size_t k = 0; k < local.size(); ++k) g[local[k]] = out_digits[k];
      out(static_cast<Eigen::Index>(encode_digits(g, d)), static_cast<Eigen::Index>(col)) = c;
    }
  }
  return LinearMap(d, vertices, vertices, std::move(out));
}

LinearMap permutation_op(const std::vector<int>& perm, int d) {
  const std::size_t len = perm.size();
  const std::size_t n = dimension_of(d, len, kMaxUnitaryDimension);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t col = 0; col < n; ++col) {
    const auto g = decode_index(col, len, d);
    std::vector<int> out(len);
    for (std::size_t k = 0; k < len; ++k) out[static_cast<std::size_t>(perm[k])] = g[k];
    m(static_cast<Eigen::Index>(encode_digits(out, d)), static_cast<Eigen::Index>(col)) = 1.0;
  }
  const auto wires = iota_vertices(static_cast<int>(len));
  return LinearMap(d, wires, wires, std::move(m));
}

StateVector embed_w(const StateVector& state, const std::vector<int>& zero_vertices) {
  std::vector<int> all = state.vertices();
  for (int k : zero_vertices) {
    if (std::find(all.begin(), all.end(), k) != all.end()) {
      throw std::invalid_argument("embed_w: vertex " + std::to_string(k) + " already carries the state");
    }
    all.push_back(k);
  }
  std::sort(all.begin(), all.end());
  const auto pos = positions_in(state.vertices(), all);
  StateVector out(state.d(), all);
  std::vector<int> g(all.size(), 0);
  for (std::size_t idx = 0; idx < state.dimension(); ++idx) {
    const auto local = decode_index(idx, state.digit_count(), state.d());
    for (std::size_t k = 0; k < local.size(); ++k) g[pos[k]] = local[k];
    out.amplitudes()(static_cast<Eigen::Index>(encode_digits(g, state.d()))) =
        state.amplitudes()(static_cast<Eigen::Index>(idx));
  }
  return out;
}

LinearMap embed_map(const std::vector<int>& domain, const std::vector<int>& zero_vertices, int d) {
  const std::size_t n = dimension_of(d, domain.size());
  std::vector<int> codomain;
  Eigen::MatrixXcd m;
  for (std::size_t col = 0; col < n; ++col) {
    StateVector basis(d, domain);
    basis.amplitudes()(static_cast<Eigen::Index>(col)) = 1.0;
    StateVector image = embed_w(basis, zero_vertices);
    if (col == 0) {
      codomain = image.vertices();
      m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(image.dimension()), static_cast<Eigen::Index>(n));
    }
    m.col(static_cast<Eigen::Index>(col)) = image.amplitudes();
  }
  return LinearMap(d, domain, codomain, std::move(m));
}

PostselectResult postselect(const StateVector& state, const MultiIndex& outcome) {
  if (outcome.d != state.d()) throw std::invalid_argument("postselect: modulus mismatch");
  const auto measured = positions_in(outcome.vertices, state.vertices());
  std::vector<int> kept_vertices;
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < state.digit_count(); ++k) {
    if (std::find(measured.begin(), measured.end(), k) == measured.end()) {
      kept.push_back(k);
      kept_vertices.push_back(state.vertices()[k]);
    }
  }
  StateVector out(state.d(), kept_vertices);
  std::vector<int> g(state.digit_count(), 0);
  for (std::size_t k = 0; k < measured.size(); ++k) g[measured[k]] = outcome.digits[k];
  for (std::size_t idx = 0; idx < out.dimension(); ++idx) {
    const auto local = decode_index(idx, kept.size(), state.d());
    for (std::size_t k = 0; k < kept.size(); ++k) g[kept[k]] = local[k];
    out.amplitudes()(static_cast<Eigen::Index>(idx)) =
        state.amplitudes()(static_cast<Eigen::Index>(encode_digits(g, state.d())));
  }
  const double probability = out.amplitudes().squaredNorm();
  return {std::move(out), probability};
}

std::string format_digits(std::span<const int> digits, int d) {
  std::string text;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (d <= 10) {
      text += static_cast<char>('0' + digits[k]);
    } else {
      if (k > 0) text += ',';
      text += std::to_string(digits[k]);
    }
  }
  return text;
}

std::vector<int> parse_digits(const std::string& text, int d, std::size_t length) {
  std::vector<int> digits;
  if (d <= 10) {
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("'" + std::string(1, c) + "' is not a digit");
      digits.push_back(c - '0');
    }
  } else if (!text.empty()) {
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        digits.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        throw std::invalid_argument("\"" + item + "\" is not a digit");
      }
    }
  }
  if (digits.size() != length) {
    throw std::invalid_argument("expected " + std::to_string(length) + " digits, got " +
                                std::to_string(digits.size()));
  }
  for (int g : digits) {
    if (g < 0 || g >= d) {
      throw std::invalid_argument("digit " + std::to_string(g) + " out of radix " + std::to_string(d));
    }
  }
  return digits;
}

std::string dump_state(const StateVector& state, bool skip_zero) {
  std::string out;
  char buf[96];
  for (std::size_t idx = 0; idx < state.dimension(); ++idx) {
    const Complex a = state.amplitudes()(static_cast<Eigen::Index>(idx));
    if (skip_zero && a == Complex(0.0)) continue;
    const auto g = decode_index(idx, state.digit_count(), state.d());
    std::snprintf(buf, sizeof buf, " %.17g %.17g\n", a.real(), a.imag());
    out += format_digits(g, state.d());
    out += buf;
  }
  return out;
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace graphnet
