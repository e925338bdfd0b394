#include "xyvqe/entropylab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "xyvqe/model.hpp"

namespace xyvqe {

EntropyProfile entropy_profile(const StateVector& state) {
  EntropyProfile p;
  p.values.resize(static_cast<std::size_t>(state.num_qubits) + 1);
  p.values[0] = 0;
  p.values[state.num_qubits] = 0;
  for (int x = 1; x < state.num_qubits; ++x)
    p.values[x] = von_neumann_entropy(reduced_density_matrix(state, x));
  return p;
}

EntropyProfile max_entropy_profile(int num_qubits) {
  EntropyProfile p;
  const double half = num_qubits / 2.0;
  for (int x = 0; x <= num_qubits; ++x)
    p.values.push_back(std::abs(std::abs(x - half) - half));
  return p;
}

EntropyMaxResult maximize_half_chain_entropy(
    const AnsatzSpec& spec, const OptimizerConfig& cfg, int restarts,
    const std::vector<int>& snapshot_evals) {
  if (spec.num_qubits % 2 != 0)
    throw std::invalid_argument(
        "maximize_half_chain_entropy: even qubit count required");
  const int half = spec.num_qubits / 2;
  const Circuit circ = build(spec);

  EntropyMaxResult res;
  // Shared across restarts so trajectory/snapshots use a global eval index.
  int eval_index = 0;
  double incumbent = -1;
  std::vector<double> incumbent_params(
      static_cast<std::size_t>(circ.num_params), 0.0);
  auto snapshots_left = snapshot_evals;
  std::sort(snapshots_left.begin(), snapshots_left.end());

  Objective objective = [&](std::span<const double> p) {
    const StateVector psi = run_circuit(circ, p);
    const double s =
        von_neumann_entropy(reduced_density_matrix(psi, half));
    if (s > incumbent) {
      incumbent = s;
      incumbent_params.assign(p.begin(), p.end());
      res.trajectory.emplace_back(eval_index, s);
    }
    while (!snapshots_left.empty() && eval_index >= snapshots_left.front()) {
      res.profiles.emplace_back(
          eval_index, entropy_profile(run_circuit(circ, incumbent_params)));
      snapshots_left.erase(snapshots_left.begin());
    }
    ++eval_index;
    return -s;
  };

  OptRun best;
  bool have_best = false;
  for (int r = 0; r < restarts; ++r) {
    Rng rng = Rng(cfg.seed).spawn(static_cast<std::uint64_t>(r));
    std::vector<double> x0(static_cast<std::size_t>(circ.num_params));
    for (double& x : x0) x = rng.uniform(-std::numbers::pi, std::numbers::pi);
    OptimizerConfig sub = cfg;
    sub.seed = rng.next_u64();
    OptRun run = minimize(objective, std::move(x0), sub);
    run.restart_index = r;
    res.evals_used += run.evals_used;
    if (!have_best || run.best_value < best.best_value) {
      best = std::move(run);
      have_best = true;
    }
  }
  res.max_value = -best.best_value;
  res.best_params = best.best_params;
  res.final_profile = entropy_profile(run_circuit(circ, best.best_params));
  return res;
}

double range_r_max_entropy(int num_qubits, int r, const OptimizerConfig& cfg,
                           int restarts) {
  if (r < 1 || r > num_qubits - 1)
    throw std::invalid_argument("range_r_max_entropy: r out of [1, N-1]");
  AnsatzSpec spec;
  spec.family = Family::TQR;
  spec.connectivity = Connectivity::with_range(r);
  spec.num_qubits = num_qubits;
  return maximize_half_chain_entropy(spec, cfg, restarts).max_value;
}

std::pair<double, double> exact_phase_entropies(int num_qubits,
                                                double coupling) {
  if (num_qubits % 2 != 0 || num_qubits > 8)
    throw std::invalid_argument(
        "exact_phase_entropies: even N <= 8 required");
  const int half = num_qubits / 2;
  const GroundState ferro = exact_ground_state(num_qubits, coupling, 0.0);
  const double s_ferro =
      von_neumann_entropy(reduced_density_matrix(ferro.state, half));
  const double h_para = coupling * (num_qubits - 2);
  const GroundState para = exact_ground_state(num_qubits, coupling, h_para);
  const double s_para =
      von_neumann_entropy(reduced_density_matrix(para.state, half));
  return {s_ferro, s_para};
}

}  // namespace xyvqe
