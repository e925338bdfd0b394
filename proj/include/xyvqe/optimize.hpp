#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "xyvqe/rng.hpp"

namespace xyvqe {

enum class Method { NELDER_MEAD, POWELL, SPSA };

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct OptimizerConfig {
  Method method = Method::NELDER_MEAD;
  int max_evals = 20000;
  double tolerance_f = 1e-8;
  double tolerance_x = 1e-8;
  std::uint64_t seed = 0;
  std::optional<Bounds> bounds;
  // Noisy objectives: stop when the incumbent improves by less than
  // noise_floor over a window of 50 evaluations (0 disables).
  double noise_floor = 0;
  // SPSA gain schedules a_k = a/(k+1+A)^0.602, c_k = c/(k+1)^0.101.
  double spsa_a = 0.2;
  double spsa_c = 0.1;
};

struct OptRun {
  double best_value = 0;
  std::vector<double> best_params;
  int evals_used = 0;
  // Incumbent-best sequence: (eval index, value). Non-increasing for
  // NELDER_MEAD and POWELL.
  std::vector<std::pair<int, double>> history;
  bool converged = false;
  int restart_index = 0;
};

using Objective = std::function<double(std::span<const double>)>;
// Builds a fresh objective for a restart; lets stateful (sampled) objectives
// keep isolated PRNG streams per restart.
using ObjectiveFactory = std::function<Objective(int restart_index)>;

OptRun minimize(const Objective& f, std::vector<double> x0,
                const OptimizerConfig& cfg);

// Best run across restarts; initial points uniform in [-pi, pi]^dim from a
// seed stream derived per restart. Ties broken by restart index.
OptRun multi_start(const Objective& f, int dim, int restarts,
                   const OptimizerConfig& cfg);
OptRun multi_start(const ObjectiveFactory& factory, int dim, int restarts,
                   const OptimizerConfig& cfg);

// Wraps angle into (-pi, pi].
double wrap_angle(double x);

}  // namespace xyvqe
