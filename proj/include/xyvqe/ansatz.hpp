#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xyvqe/qstate.hpp"
#include "xyvqe/rng.hpp"

namespace xyvqe {

enum class GateKind { RY, RZ, RX, CNOT, CRX, RXX, RYY };

const char* gate_kind_name(GateKind k);

struct GateInstr {
  GateKind kind;
  int q0 = 0;         // target, or control for CNOT/CRX
  int q1 = -1;        // target for two-qubit gates
  int param_slot = -1;  // -1 for parameter-free gates

  bool is_two_qubit() const {
    return kind == GateKind::CNOT || kind == GateKind::CRX ||
           kind == GateKind::RXX || kind == GateKind::RYY;
  }
};

struct Circuit {
  int num_qubits = 0;
  std::vector<GateInstr> instrs;
  int num_params = 0;
};

enum class Family { MF, CNOT, CRX, TQR };

struct Connectivity {
  enum class Kind { Linear, Full, Range, Explicit };
  Kind kind = Kind::Full;
  int range = 1;  // for Range
  std::vector<std::pair<int, int>> pairs;  // for Explicit; first = control

  static Connectivity linear() { return {Kind::Linear, 1, {}}; }
  static Connectivity full() { return {Kind::Full, 1, {}}; }
  static Connectivity with_range(int r) { return {Kind::Range, r, {}}; }
  static Connectivity explicit_order(std::vector<std::pair<int, int>> p) {
    return {Kind::Explicit, 1, std::move(p)};
  }
};

struct AnsatzSpec {
  Family family = Family::MF;
  Connectivity connectivity = Connectivity::full();
  int layers = 1;
  int num_qubits = 2;
  // Extension: repeat the mean-field block between entangler layers.
  bool interleave_mf = false;
};

// Ordered entangler pair list for a spec (control first for CNOT/CRX).
std::vector<std::pair<int, int>> entangler_pairs(const AnsatzSpec& spec);

// Builds the circuit. Mean-field block is RY(theta_p) RZ(phi_p) per qubit.
// CNOT/CRX: mean-field block, then `layers` entangler blocks.
// TQR: `layers` entangler blocks (RXX then RYY per pair), then mean-field.
// Each layer gets independent parameter slots.
Circuit build(const AnsatzSpec& spec);

int param_count(const AnsatzSpec& spec);

// Number of (permutation, direction) arrangements of the full pair set.
double gate_order_space_size(int num_qubits);

// Uniformly samples `count` distinct gate orders of the full pair set.
std::vector<Connectivity> enumerate_gate_orders(int num_qubits, Rng& rng,
                                                int count);

StateVector run_circuit(const Circuit& c, std::span<const double> params);

// Line-oriented text form: one instruction per line, "KIND q0 [q1] [slot]".
std::string serialize(const Circuit& c);
Circuit deserialize(const std::string& text);

}  // namespace xyvqe
