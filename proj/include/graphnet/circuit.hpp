#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace graphnet {

enum class GateKind { Fourier, FourierInv, CShift, CPhase };

/// One elementary gate. For CShift, `first` is the control and `second` the
/// target; CPhase is symmetric and stored with first < second. Single-digit
/// gates leave `second` at -1 and `power` at 0.
struct Gate {
  GateKind kind = GateKind::Fourier;
  int first = 0;
  int second = -1;
  int power = 0;

  static Gate fourier(int wire) { return {GateKind::Fourier, wire, -1, 0}; }
  static Gate fourier_inv(int wire) { return {GateKind::FourierInv, wire, -1, 0}; }
  static Gate cshift(int control, int target, int power) {
    return {GateKind::CShift, control, target, power};
  }
  static Gate cphase(int i, int j, int power);

  bool is_two_digit() const { return kind == GateKind::CShift || kind == GateKind::CPhase; }
  bool touches(int wire) const { return first == wire || (is_two_digit() && second == wire); }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Gate list acting on `register_size` digits of dimension d. Gates are
/// stored in application order: gates()[0] acts on the state first.
class Circuit {
 public:
  Circuit(int d, int register_size);

  int d() const { return d_; }
  int register_size() const { return register_size_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  /// Reduces the power mod d and validates indices. A power that vanishes
  /// mod d, an out-of-range wire or control == target throws
  /// std::invalid_argument.
  void append(Gate gate);
  void append(const Circuit& other, int wire_offset = 0);

  /// Free-form lines emitted as `# ...` after the netlist header.
  const std::vector<std::string>& comments() const { return comments_; }
  void add_comment(std::string text) { comments_.push_back(std::move(text)); }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int d_;
  int register_size_;
  std::vector<Gate> gates_;
  std::vector<std::string> comments_;
};

struct GateCount {
  int fourier = 0;
  int fourier_inv = 0;
  int cshift = 0;
  int cphase = 0;
  int total = 0;

  friend bool operator==(const GateCount&, const GateCount&) = default;
};

GateCount gate_count(const Circuit& circuit);

/// Reversed order, F <-> F*, powers n -> d - n.
Circuit invert(const Circuit& circuit);

/// Rewrites every CPhase(i,j,n) as F*_j, CShift(i,j,n), F_j and cancels
/// F_j / F*_j pairs that become adjacent on wire j, i.e. with no gate on
/// wire j between them, provided at least one of the two came from the
/// rewrite.
Circuit lower_phases(const Circuit& circuit);

std::string emit_netlist(const Circuit& circuit);
/// Throws ParseError.
Circuit parse_netlist(std::string_view text);

}  // namespace graphnet
