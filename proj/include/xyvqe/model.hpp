#pragma once

#include <string>
#include <vector>

#include "xyvqe/qstate.hpp"

namespace xyvqe {

// Tensor product of single-qubit Paulis with a real coefficient.
// letters[q] in {'I','X','Y','Z'} acts on qubit q.
struct PauliString {
  double coefficient = 0;
  std::string letters;
};

// Long-range XY chain: H = -J sum_{i<j} (X_i X_j + Y_i Y_j) - h sum_i Z_i.
struct XYModel {
  double coupling = 1.0;  // J
  double field = 0.0;     // h
  int num_sites = 2;      // N >= 2
};

// The N^2 Pauli strings of the Hamiltonian, in fixed order: all XX pairs by
// (i,j) lexicographic, then all YY pairs, then the N single-Z terms.
std::vector<PauliString> term_list(const XYModel& m);

// Dense 2^N x 2^N matrix (row-major), N <= 8.
std::vector<cplx> dense_hamiltonian(const XYModel& m);

// Energy per site of the symmetric state with n excitations.
double sym_energy_per_site(int n, int num_sites, double coupling, double field);

struct GroundEnergy {
  double energy_per_site = 0;
  int n_star = 0;        // minimizing excitation count (smaller n on ties)
  bool degenerate = false;
  int n_alt = -1;        // the tied sector when degenerate
};

GroundEnergy exact_ground_energy_per_site(int num_sites, double coupling,
                                          double field);

// Level-crossing fields h = J*(2n+1-N) for n = 0..N-1, ascending.
std::vector<double> critical_fields(int num_sites, double coupling);

// Uniform superposition of all basis states with Hamming weight n.
StateVector dicke_state(int num_sites, int n);

struct GroundState {
  StateVector state;
  double energy_per_site = 0;
  int n_star = 0;
  bool degenerate = false;
  int n_alt = -1;
};

GroundState exact_ground_state(int num_sites, double coupling, double field);

// Mean-field variational energy for Bloch angles (theta_p, phi_p).
double mf_energy(const std::vector<double>& thetas,
                 const std::vector<double>& phis, double coupling,
                 double field);

// (<X>, <Y>, <Z>) of the single-qubit state with the given Bloch angles.
std::array<double, 3> bloch_vector(double theta, double phi);

}  // namespace xyvqe
