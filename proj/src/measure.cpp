#include "xyvqe/measure.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xyvqe {

Mat2 basis_rotation(Basis b) {
  using std::numbers::pi;
  switch (b) {
    case Basis::X: return ry_gate(-pi / 2);
    case Basis::Y: return rx_gate(pi / 2);
    case Basis::Z: break;
  }
  return {1.0, 0.0, 0.0, 1.0};
}

double estimate_z(const Histogram& counts, int j, std::int64_t shots) {
  if (counts.empty()) throw std::invalid_argument("estimate_z: empty histogram");
  const std::uint64_t bit = std::uint64_t{1} << j;
  std::int64_t signed_sum = 0;
  for (const auto& [b, c] : counts) signed_sum += (b & bit) ? -c : c;
  return static_cast<double>(signed_sum) / static_cast<double>(shots);
}

double estimate_zz(const Histogram& counts, int i, int j, std::int64_t shots) {
  if (i == j) throw std::invalid_argument("estimate_zz: i equals j");
  if (counts.empty())
    throw std::invalid_argument("estimate_zz: empty histogram");
  const std::uint64_t bi = std::uint64_t{1} << i;
  const std::uint64_t bj = std::uint64_t{1} << j;
  std::int64_t signed_sum = 0;
  for (const auto& [b, c] : counts) {
    const bool even = ((b & bi) != 0) == ((b & bj) != 0);
    signed_sum += even ? c : -c;
  }
  return static_cast<double>(signed_sum) / static_cast<double>(shots);
}

double pauli_expectation(const StateVector& state, const PauliString& term) {
  const int n = state.num_qubits;
  if (static_cast<int>(term.letters.size()) != n)
    throw std::invalid_argument("pauli_expectation: length mismatch");
  std::uint64_t flip = 0;
  for (int q = 0; q < n; ++q)
    if (term.letters[q] == 'X' || term.letters[q] == 'Y')
      flip |= std::uint64_t{1} << q;
  cplx acc{0, 0};
  const std::uint64_t dim = state.amps.size();
  for (std::uint64_t b = 0; b < dim; ++b) {
    cplx val = state.amps[b];
    if (val == cplx{0, 0}) continue;
    for (int q = 0; q < n; ++q) {
      const bool bit = (b >> q) & 1;
      switch (term.letters[q]) {
        case 'Z':
          if (bit) val = -val;
          break;
        case 'Y':
          val *= bit ? cplx{0, -1} : cplx{0, 1};
          break;
        default:
          break;
      }
    }
    acc += std::conj(state.amps[b ^ flip]) * val;
  }
  return acc.real();
}

double energy_exact(const Circuit& c, std::span<const double> params,
                    const XYModel& m) {
  const StateVector psi = run_circuit(c, params);
  double e = 0;
  for (const auto& term : term_list(m))
    e += term.coefficient * pauli_expectation(psi, term);
  return e;
}

namespace {

StateVector rotated_state(const StateVector& psi, Basis basis) {
  StateVector s = psi;
  if (basis != Basis::Z) {
    const Mat2 r = basis_rotation(basis);
    for (int q = 0; q < s.num_qubits; ++q) apply_1q(s, r, q);
  }
  return s;
}

// Basis rotations on the qubits a single Pauli string acts on.
StateVector rotated_for_term(const StateVector& psi, const PauliString& term) {
  StateVector s = psi;
  for (int q = 0; q < s.num_qubits; ++q) {
    if (term.letters[q] == 'X') apply_1q(s, basis_rotation(Basis::X), q);
    else if (term.letters[q] == 'Y') apply_1q(s, basis_rotation(Basis::Y), q);
  }
  return s;
}

// Estimates one term from a histogram measured in its diagonalizing basis.
double term_from_counts(const Histogram& counts, const PauliString& term,
                        std::int64_t shots) {
  int qa = -1, qb = -1;
  for (int q = 0; q < static_cast<int>(term.letters.size()); ++q) {
    if (term.letters[q] == 'I') continue;
    (qa < 0 ? qa : qb) = q;
  }
  if (qb >= 0) return estimate_zz(counts, qa, qb, shots);
  return estimate_z(counts, qa, shots);
}

}  // namespace

EnergyEstimate energy_sampled(const Circuit& c, std::span<const double> params,
                              const XYModel& m, std::int64_t shots_per_setting,
                              Rng& rng, bool per_term) {
  if (shots_per_setting < 1)
    throw std::invalid_argument("energy_sampled: shots must be >= 1");
  const StateVector psi = run_circuit(c, params);
  const auto terms = term_list(m);

  EnergyEstimate est;
  est.shots_per_setting = shots_per_setting;
  est.mode = EnergyMode::SAMPLED;
  double var = 0;

  if (per_term) {
    for (const auto& term : terms) {
      const StateVector rot = rotated_for_term(psi, term);
      Rng sub(rng.next_u64());
      const Histogram counts = sample_counts(rot, shots_per_setting, sub);
      const double v = term_from_counts(counts, term, shots_per_setting);
      est.value += term.coefficient * v;
      var += term.coefficient * term.coefficient *
             std::max(0.0, 1 - v * v) / static_cast<double>(shots_per_setting);
    }
  } else {
    Histogram by_basis[3];
    const Basis bases[3] = {Basis::X, Basis::Y, Basis::Z};
    for (int k = 0; k < 3; ++k) {
      Rng sub(rng.next_u64());
      by_basis[k] =
          sample_counts(rotated_state(psi, bases[k]), shots_per_setting, sub);
    }
    for (const auto& term : terms) {
      int setting;
      if (term.letters.find('X') != std::string::npos) setting = 0;
      else if (term.letters.find('Y') != std::string::npos) setting = 1;
      else setting = 2;
      const double v =
          term_from_counts(by_basis[setting], term, shots_per_setting);
      est.value += term.coefficient * v;
      var += term.coefficient * term.coefficient *
             std::max(0.0, 1 - v * v) / static_cast<double>(shots_per_setting);
    }
  }
  est.std_error = std::sqrt(var);
  return est;
}

}  // namespace xyvqe
