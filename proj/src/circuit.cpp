#include "graphnet/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "graphnet/error.hpp"
#include "graphnet/group.hpp"

namespace graphnet {

Gate Gate::cphase(int i, int j, int power) {
  if (i > j) std::swap(i, j);
  return {GateKind::CPhase, i, j, power};
}

Circuit::Circuit(int d, int register_size) : d_(d), register_size_(register_size) {
  if (d < 2) throw std::invalid_argument("circuit level count must be at least 2");
  if (register_size < 0) throw std::invalid_argument("negative register size");
}

void Circuit::append(Gate gate) {
  auto check_wire = [&](int wire) {
    if (wire < 0 || wire >= register_size_) {
      throw std::invalid_argument("gate wire " + std::to_string(wire) + " outside register of " +
                                  std::to_string(register_size_));
    }
  };
  check_wire(gate.first);
  if (gate.is_two_digit()) {
    check_wire(gate.second);
    if (gate.first == gate.second) {
      throw std::invalid_argument("two-digit gate acts twice on wire " + std::to_string(gate.first));
    }
    gate.power = mod_d(gate.power, d_);
    if (gate.power == 0) throw std::invalid_argument("gate power vanishes mod d");
    if (gate.kind == GateKind::CPhase && gate.first > gate.second) {
      std::swap(gate.first, gate.second);
    }
  } else {
    gate.second = -1;
    gate.power = 0;
  }
  gates_.push_back(gate);
}

void Circuit::append(const Circuit& other, int wire_offset) {
  if (other.d() != d_) throw std::invalid_argument("cannot concatenate circuits of different d");
  for (Gate g : other.gates()) {
    g.first += wire_offset;
    if (g.is_two_digit()) g.second += wire_offset;
    append(g);
  }
}

GateCount gate_count(const Circuit& circuit) {
  GateCount count;
  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::Fourier: ++count.fourier; break;
      case GateKind::FourierInv: ++count.fourier_inv; break;
      case GateKind::CShift: ++count.cshift; break;
      case GateKind::CPhase: ++count.cphase; break;
    }
  }
  count.total = static_cast<int>(circuit.size());
  return count;
}

Circuit invert(const Circuit& circuit) {
  Circuit result(circuit.d(), circuit.register_size());
  for (const auto& c : circuit.comments()) result.add_comment(c);
  const auto& gates = circuit.gates();
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case GateKind::Fourier: g.kind = GateKind::FourierInv; break;
      case GateKind::FourierInv: g.kind = GateKind::Fourier; break;
      case GateKind::CShift:
      case GateKind::CPhase: g.power = circuit.d() - g.power; break;
    }
    result.append(g);
  }
  return result;
}

namespace {

bool is_fourier_pair(const Gate& a, const Gate& b) {
  return a.first == b.first &&
         ((a.kind == GateKind::Fourier && b.kind == GateKind::FourierInv) ||
          (a.kind == GateKind::FourierInv && b.kind == GateKind::Fourier));
}

}  // namespace

Circuit lower_phases(const Circuit& circuit) {
  struct Slot {
    Gate gate;
    bool rewritten;
    bool removed = false;
  };
  std::vector<Slot> slots;
  for (const Gate& g : circuit.gates()) {
    if (g.kind != GateKind::CPhase) {
      slots.push_back({g, false});
      continue;
    }
    // u(i,j)^n = F_j c(i,j)^n F_j^*, so F_j^* acts first.
    slots.push_back({Gate::fourier_inv(g.second), true});
    slots.push_back({Gate::cshift(g.first, g.second, g.power), true});
    slots.push_back({Gate::fourier(g.second), true});
  }

  // Per-wire stacks of surviving gates touching that wire.
  std::vector<std::vector<std::size_t>> on_wire(static_cast<std::size_t>(circuit.register_size()));
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const Gate& g = slots[k].gate;
    if (!g.is_two_digit()) {
      auto& stack = on_wire[static_cast<std::size_t>(g.first)];
      if (!stack.empty()) {
        Slot& prev = slots[stack.back()];
        if (is_fourier_pair(prev.gate, g) && (prev.rewritten || slots[k].rewritten)) {
          prev.removed = true;
          slots[k].removed = true;
          stack.pop_back();
          continue;
        }
      }
      stack.push_back(k);
    } else {
      on_wire[static_cast<std::size_t>(g.first)].push_back(k);
      on_wire[static_cast<std::size_t>(g.second)].push_back(k);
    }
  }

  Circuit result(circuit.d(), circuit.register_size());
  for (const auto& c : circuit.comments()) result.add_comment(c);
  for (const Slot& s : slots) {
    if (!s.removed) result.append(s.gate);
  }
  return result;
}

std::string emit_netlist(const Circuit& circuit) {
  std::ostringstream out;
  out << "QDNET d=" << circuit.d() << " q=" << circuit.register_size() << "\n";
  for (const auto& c : circuit.comments()) out << "# " << c << "\n";
  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::Fourier: out << "F " << g.first; break;
      case GateKind::FourierInv: out << "FINV " << g.first; break;
      case GateKind::CShift: out << "CSHIFT " << g.first << ' ' << g.second << ' ' << g.power; break;
      case GateKind::CPhase: out << "CPHASE " << g.first << ' ' << g.second << ' ' << g.power; break;
    }
    out << "\n";
  }
  return out.str();
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

int parse_int(std::string_view token, std::size_t line_no) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got \"" +
                     std::string(token) + "\"");
  }
  return value;
}

int parse_prefixed(std::string_view token, std::string_view prefix, std::size_t line_no) {
  if (token.substr(0, prefix.size()) != prefix) {
    throw ParseError("line " + std::to_string(line_no) + ": expected " + std::string(prefix) +
                     "<int> in header");
  }
  return parse_int(token.substr(prefix.size()), line_no);
}

}  // namespace

Circuit parse_netlist(std::string_view text) {
  std::vector<std::string> comments;
  std::optional<Circuit> circuit;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!line.empty() && line.front() == '#') {
      line.remove_prefix(1);
      if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      comments.emplace_back(line);
      continue;
    }
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    if (!circuit) {
      if (tokens.size() != 3 || tokens[0] != "QDNET") {
        throw ParseError("line " + std::to_string(line_no) + ": expected header \"QDNET d=<int> q=<int>\"");
      }
      const int d = parse_prefixed(tokens[1], "d=", line_no);
      const int q = parse_prefixed(tokens[2], "q=", line_no);
      if (d < 2) throw ParseError("header: d must be at least 2");
      if (q < 0) throw ParseError("header: negative register size");
      circuit.emplace(d, q);
      continue;
    }

    const std::string_view op = tokens[0];
    const auto where = "line " + std::to_string(line_no) + ": ";
    auto wire = [&](std::string_view token) {
      const int w = parse_int(token, line_no);
      if (w < 0 || w >= circuit->register_size()) {
        throw ParseError(where + "wire index " + std::to_string(w) + " out of range");
      }
      return w;
    };
    auto expect_args = [&](std::size_t n) {
      if (tokens.size() != n + 1) {
        throw ParseError(where + std::string(op) + " takes " + std::to_string(n) + " arguments");
      }
    };

    if (op == "F" || op == "FINV") {
      expect_args(1);
      const int i = wire(tokens[1]);
      circuit->append(op == "F" ? Gate::fourier(i) : Gate::fourier_inv(i));
    } else if (op == "CSHIFT" || op == "CPHASE") {
      expect_args(3);
      const int i = wire(tokens[1]);
      const int j = wire(tokens[2]);
      const int n = parse_int(tokens[3], line_no);
      if (i == j) throw ParseError(where + "control equals target");
      if (n < 1 || n >= circuit->d()) {
        throw ParseError(where + "power " + std::to_string(n) + " outside [1, d)");
      }
      circuit->append(op == "CSHIFT" ? Gate::cshift(i, j, n) : Gate::cphase(i, j, n));
    } else {
      throw ParseError(where + "unknown opcode \"" + std::string(op) + "\"");
    }
  }
  if (!circuit) throw ParseError("netlist has no QDNET header");
  for (auto& c : comments) circuit->add_comment(std::move(c));
  return std::move(*circuit);
}

}  // namespace graphnet
