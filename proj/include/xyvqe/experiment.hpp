#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xyvqe/ansatz.hpp"
#include "xyvqe/measure.hpp"
#include "xyvqe/optimize.hpp"

namespace xyvqe {

enum class ExperimentKind {
  ExactSweep,
  MfSweep,
  VqeSweep,
  GateOrders,
  Layers,
  EntropyMax,
  EntropyRange,
  EntropyGrowth,
};

const char* experiment_name(ExperimentKind k);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::ExactSweep;
  int num_qubits = 4;
  double coupling = 1.0;
  std::vector<double> h_grid;  // strictly increasing; default [-4, 4] / 0.25
  Family family = Family::TQR;
  Connectivity::Kind connectivity = Connectivity::Kind::Full;
  int range_r = 1;
  std::vector<std::pair<int, int>> explicit_pairs;
  int layers = 1;
  EnergyMode mode = EnergyMode::EXACT;
  std::int64_t shots = 1 << 14;
  bool per_term = false;
  std::optional<Method> optimizer;  // absent: chosen by mode / experiment
  int max_evals = 20000;
  double tolerance_f = 1e-8;
  double tolerance_x = 1e-8;
  int restarts = 10;
  std::uint64_t seed = 0;
  int jobs = 1;
  int orders_count = 10;
  std::vector<int> snapshot_evals;  // entropy-growth profile snapshots
  std::string out;  // output path; empty = stdout

  AnsatzSpec ansatz_spec() const;
};

// Parses a JSON config document. Unknown keys and missing required keys are
// reported by name.
ExperimentConfig parse_config(const std::string& text);

// Canonical JSON echo; parse(serialize(cfg)) == cfg.
std::string serialize_config(const ExperimentConfig& cfg);

// Runs the experiment and returns the CSV document (config echoed in '#'
// header lines). Failed grid points are listed on `errors` and skipped.
std::string run_experiment(const ExperimentConfig& cfg,
                           std::vector<std::string>* errors = nullptr);

}  // namespace xyvqe
