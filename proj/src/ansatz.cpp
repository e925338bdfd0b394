#include "xyvqe/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace xyvqe {

const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::RX: return "RX";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CRX: return "CRX";
    case GateKind::RXX: return "RXX";
    case GateKind::RYY: return "RYY";
  }
  return "?";
}

std::vector<std::pair<int, int>> entangler_pairs(const AnsatzSpec& spec) {
  const int n = spec.num_qubits;
  const Connectivity& c = spec.connectivity;
  std::vector<std::pair<int, int>> pairs;
  switch (c.kind) {
    case Connectivity::Kind::Linear:
      for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
      break;
    case Connectivity::Kind::Full:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
      break;
    case Connectivity::Kind::Range:
      if (c.range < 1)
        throw std::invalid_argument("entangler_pairs: range must be >= 1");
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (j - i <= c.range) pairs.emplace_back(i, j);
      break;
    case Connectivity::Kind::Explicit:
      for (const auto& [a, b] : c.pairs) {
        if (a < 0 || a >= n || b < 0 || b >= n)
          throw std::invalid_argument("entangler_pairs: qubit out of range");
        if (a == b)
          throw std::invalid_argument("entangler_pairs: repeated qubit in pair");
      }
      pairs = c.pairs;
      break;
  }
  return pairs;
}

namespace {

void append_mean_field(Circuit& circ, int& slot) {
  for (int q = 0; q < circ.num_qubits; ++q) {
    circ.instrs.push_back({GateKind::RY, q, -1, slot++});
    circ.instrs.push_back({GateKind::RZ, q, -1, slot++});
  }
}

void append_entangler(Circuit& circ, Family family,
                      const std::vector<std::pair<int, int>>& pairs,
                      int& slot) {
  for (const auto& [a, b] : pairs) {
    switch (family) {
      case Family::CNOT:
        circ.instrs.push_back({GateKind::CNOT, a, b, -1});
        break;
      case Family::CRX:
        circ.instrs.push_back({GateKind::CRX, a, b, slot++});
        break;
      case Family::TQR:
        circ.instrs.push_back({GateKind::RXX, a, b, slot++});
        circ.instrs.push_back({GateKind::RYY, a, b, slot++});
        break;
      case Family::MF:
        break;
    }
  }
}

}  // namespace

Circuit build(const AnsatzSpec& spec) {
  if (spec.num_qubits < 1)
    throw std::invalid_argument("build: invalid qubit count");
  if (spec.layers < 1) throw std::invalid_argument("build: layers must be >= 1");
  Circuit circ;
  circ.num_qubits = spec.num_qubits;
  int slot = 0;
  if (spec.family == Family::MF) {
    append_mean_field(circ, slot);
  } else if (spec.family == Family::TQR) {
    const auto pairs = entangler_pairs(spec);
    for (int l = 0; l < spec.layers; ++l) {
      append_entangler(circ, spec.family, pairs, slot);
      if (spec.interleave_mf && l + 1 < spec.layers)
        append_mean_field(circ, slot);
    }
    append_mean_field(circ, slot);
  } else {
    const auto pairs = entangler_pairs(spec);
    append_mean_field(circ, slot);
    for (int l = 0; l < spec.layers; ++l) {
      append_entangler(circ, spec.family, pairs, slot);
      if (spec.interleave_mf && l + 1 < spec.layers)
        append_mean_field(circ, slot);
    }
  }
  circ.num_params = slot;
  return circ;
}

int param_count(const AnsatzSpec& spec) { return build(spec).num_params; }

double gate_order_space_size(int num_qubits) {
  const int npairs = num_qubits * (num_qubits - 1) / 2;
  double size = 1;
  for (int k = 2; k <= npairs; ++k) size *= k;
  return size * std::pow(2.0, npairs);
}

std::vector<Connectivity> enumerate_gate_orders(int num_qubits, Rng& rng,
                                                int count) {
  const int npairs = num_qubits * (num_qubits - 1) / 2;
  if (npairs > 12)
    throw std::invalid_argument("enumerate_gate_orders: too many pairs");
  if (count < 1 || static_cast<double>(count) > gate_order_space_size(num_qubits))
    throw std::invalid_argument(
        "enumerate_gate_orders: count exceeds arrangement space");
  std::vector<std::pair<int, int>> base;
  for (int i = 0; i < num_qubits; ++i)
    for (int j = i + 1; j < num_qubits; ++j) base.emplace_back(i, j);

  std::set<std::vector<std::pair<int, int>>> seen;
  std::vector<Connectivity> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<std::pair<int, int>> order = base;
    for (int i = npairs - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i + 1)));
      std::swap(order[i], order[j]);
    }
    for (auto& p : order)
      if (rng.next_u64() & 1u) std::swap(p.first, p.second);
    if (seen.insert(order).second)
      out.push_back(Connectivity::explicit_order(order));
  }
  return out;
}

StateVector run_circuit(const Circuit& c, std::span<const double> params) {
  if (static_cast<int>(params.size()) != c.num_params)
    throw std::invalid_argument("run_circuit: parameter count mismatch");
  StateVector state = zero_state(c.num_qubits);
  for (const auto& g : c.instrs) {
    const double theta = g.param_slot >= 0 ? params[g.param_slot] : 0.0;
    switch (g.kind) {
      case GateKind::RY: apply_1q(state, ry_gate(theta), g.q0); break;
      case GateKind::RZ: apply_1q(state, rz_gate(theta), g.q0); break;
      case GateKind::RX: apply_1q(state, rx_gate(theta), g.q0); break;
      case GateKind::CNOT:
        apply_ctrl_1q(state, pauli_x_gate(), g.q0, g.q1);
        break;
      case GateKind::CRX:
        apply_ctrl_1q(state, rx_gate(theta), g.q0, g.q1);
        break;
      case GateKind::RXX:
        apply_2q_rotation(state, Axis2Q::XX, theta, g.q0, g.q1);
        break;
      case GateKind::RYY:
        apply_2q_rotation(state, Axis2Q::YY, theta, g.q0, g.q1);
        break;
    }
  }
  return state;
}

std::string serialize(const Circuit& c) {
  std::ostringstream os;
  os << "CIRCUIT " << c.num_qubits << ' ' << c.num_params << '\n';
  for (const auto& g : c.instrs) {
    os << gate_kind_name(g.kind) << ' ' << g.q0;
    if (g.is_two_qubit()) os << ' ' << g.q1;
    if (g.param_slot >= 0) os << ' ' << g.param_slot;
    os << '\n';
  }
  return os.str();
}

Circuit deserialize(const std::string& text) {
  std::istringstream is(text);
  std::string tag;
  Circuit c;
  if (!(is >> tag >> c.num_qubits >> c.num_params) || tag != "CIRCUIT")
    throw std::invalid_argument("deserialize: missing CIRCUIT header");
  std::string kind;
  while (is >> kind) {
    GateInstr g;
    if (kind == "RY") g.kind = GateKind::RY;
    else if (kind == "RZ") g.kind = GateKind::RZ;
    else if (kind == "RX") g.kind = GateKind::RX;
    else if (kind == "CNOT") g.kind = GateKind::CNOT;
    else if (kind == "CRX") g.kind = GateKind::CRX;
    else if (kind == "RXX") g.kind = GateKind::RXX;
    else if (kind == "RYY") g.kind = GateKind::RYY;
    else throw std::invalid_argument("deserialize: unknown gate " + kind);
    if (!(is >> g.q0)) throw std::invalid_argument("deserialize: missing qubit");
    if (g.is_two_qubit() && !(is >> g.q1))
      throw std::invalid_argument("deserialize: missing second qubit");
    if (g.kind != GateKind::CNOT && !(is >> g.param_slot))
      throw std::invalid_argument("deserialize: missing slot");
    c.instrs.push_back(g);
  }
  return c;
}

}  // namespace xyvqe
