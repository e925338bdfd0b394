#pragma once

#include <cstdint>
#include <span>

#include "xyvqe/ansatz.hpp"
#include "xyvqe/model.hpp"
#include "xyvqe/qstate.hpp"
#include "xyvqe/rng.hpp"

namespace xyvqe {

enum class Basis { X, Y, Z };

// Basis-change rotation appended before a computational-basis measurement:
// X -> RY(-pi/2), Y -> RX(pi/2), Z -> none.
Mat2 basis_rotation(Basis b);

// <Z_j> from a counts histogram: (N_0 - N_1) / shots.
double estimate_z(const Histogram& counts, int j, std::int64_t shots);

// <Z_i Z_j>: signed parity average of bits i and j.
double estimate_zz(const Histogram& counts, int i, int j, std::int64_t shots);

enum class EnergyMode { EXACT, SAMPLED };

struct EnergyEstimate {
  double value = 0;
  double std_error = 0;
  std::int64_t shots_per_setting = 0;
  EnergyMode mode = EnergyMode::SAMPLED;
};

// <state| P |state> by in-place Pauli action (no dense matrix).
double pauli_expectation(const StateVector& state, const PauliString& term);

// Exact statevector energy: sum_i p_i <P_i>.
double energy_exact(const Circuit& c, std::span<const double> params,
                    const XYModel& m);

// Shot-based energy. Grouped mode runs three settings (all-X, all-Y, all-Z)
// and reads every XX, YY and Z term off the matching histogram. Per-term
// mode runs one setting per Pauli string. std_error combines per-term
// binomial variances, treating terms as independent.
EnergyEstimate energy_sampled(const Circuit& c, std::span<const double> params,
                              const XYModel& m, std::int64_t shots_per_setting,
                              Rng& rng, bool per_term = false);

}  // namespace xyvqe
