#pragma once

#include <cstdint>
#include <vector>

#include "xyvqe/ansatz.hpp"
#include "xyvqe/measure.hpp"
#include "xyvqe/model.hpp"
#include "xyvqe/optimize.hpp"

namespace xyvqe {

struct VqeConfig {
  XYModel model;
  AnsatzSpec ansatz;
  EnergyMode mode = EnergyMode::EXACT;
  std::int64_t shots_per_setting = 1 << 14;
  bool per_term_measurement = false;
  OptimizerConfig optimizer;
  // When set, the optimizer method follows the mode: NELDER_MEAD for EXACT,
  // SPSA (with a shot-noise stopping floor) for SAMPLED.
  bool auto_method = true;
  int restarts = 10;
  std::uint64_t seed = 0;
};

struct RestartSummary {
  int restart_index = 0;
  double best_value = 0;
  int evals_used = 0;
  bool converged = false;
};

struct VqeResult {
  double energy_per_site = 0;
  std::vector<double> params;  // wrapped to (-pi, pi]
  double fidelity_vs_exact = 0;
  bool degenerate_reference = false;
  std::vector<std::pair<int, double>> history;  // incumbent energy (total)
  std::vector<RestartSummary> restarts_summary;
  int evals_used = 0;
  double wall_seconds = 0;
};

// Full VQE loop: build ansatz, optimize the energy objective with restarts,
// recompute the final state exactly for the fidelity. At degenerate fields
// the fidelity is the maximum over the two tied Dicke references.
VqeResult run(const VqeConfig& cfg);

// Independent runs per field value, seeds derived from (cfg.seed, index).
std::vector<VqeResult> sweep(const VqeConfig& cfg,
                             const std::vector<double>& h_values, int jobs = 1);

// Effective optimizer config for a mode: SAMPLED defaults to SPSA with a
// shot-noise stopping floor, EXACT to the configured method.
OptimizerConfig effective_optimizer(const VqeConfig& cfg);

}  // namespace xyvqe
