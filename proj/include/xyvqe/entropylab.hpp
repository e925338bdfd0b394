#pragma once

#include <utility>
#include <vector>

#include "xyvqe/ansatz.hpp"
#include "xyvqe/optimize.hpp"
#include "xyvqe/qstate.hpp"

namespace xyvqe {

// Entanglement entropy S(x) in bits across each chain cut x = 0..N.
struct EntropyProfile {
  std::vector<double> values;  // size N + 1; values[0] = values[N] = 0
};

EntropyProfile entropy_profile(const StateVector& state);

// Largest profile any N-qubit state can have: ||x - N/2| - N/2|.
EntropyProfile max_entropy_profile(int num_qubits);

struct EntropyMaxResult {
  double max_value = 0;
  std::vector<double> best_params;
  // Incumbent-best half-chain entropy, (eval index, value), non-decreasing.
  std::vector<std::pair<int, double>> trajectory;
  // Entropy-vs-cut snapshots of the incumbent at requested eval indices.
  std::vector<std::pair<int, EntropyProfile>> profiles;
  EntropyProfile final_profile;
  int evals_used = 0;
};

// Maximizes S(N/2) over the circuit parameters of the ansatz (POWELL by
// default, minimizing -S). Even N only.
EntropyMaxResult maximize_half_chain_entropy(
    const AnsatzSpec& spec, const OptimizerConfig& cfg, int restarts = 5,
    const std::vector<int>& snapshot_evals = {});

// Max half-chain entropy of the TQR family restricted to pairs with
// |i - j| <= r.
double range_r_max_entropy(int num_qubits, int r, const OptimizerConfig& cfg,
                           int restarts = 5);

// Half-chain entropies of the exact ground state: at h = 0 (ferromagnet)
// and at the midpoint of the outermost paramagnetic interval with nonzero
// entropy, h = J*(N-2) (the n = N-1 sector).
std::pair<double, double> exact_phase_entropies(int num_qubits,
                                                double coupling);

}  // namespace xyvqe
