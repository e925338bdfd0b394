#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "xyvqe/rng.hpp"

namespace xyvqe {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 24;

// 2x2 complex matrix, row-major: {a00, a01, a10, a11}.
using Mat2 = std::array<cplx, 4>;

Mat2 rx_gate(double angle);
Mat2 ry_gate(double angle);
Mat2 rz_gate(double angle);
Mat2 pauli_x_gate();

bool is_unitary_2x2(const Mat2& u, double tol = 1e-10);

// N-qubit register, 2^N amplitudes. Qubit q lives in bit q of the basis
// index: qubit 0 is the least significant bit, so |q0 q1 ... q(N-1)> with
// q0 = 1 and the rest 0 is index 1.
struct StateVector {
  int num_qubits = 0;
  std::vector<cplx> amps;

  double norm_sq() const;
};

StateVector zero_state(int num_qubits);

void apply_1q(StateVector& state, const Mat2& u, int target);
void apply_ctrl_1q(StateVector& state, const Mat2& u, int control, int target);

enum class Axis2Q { XX, YY };

// exp(-i * angle * A_i A_j / 2) with A in {X, Y}.
void apply_2q_rotation(StateVector& state, Axis2Q axis, double angle, int i,
                       int j);

cplx inner_product(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& a, const StateVector& b);

using Histogram = std::map<std::uint64_t, std::int64_t>;

// Samples `shots` computational-basis outcomes i.i.d. from |amp[b]|^2.
Histogram sample_counts(const StateVector& state, std::int64_t shots, Rng& rng);

struct DensityMatrix {
  int dim = 0;
  std::vector<cplx> entries;  // row-major, dim x dim

  cplx& at(int i, int j) { return entries[static_cast<std::size_t>(i) * dim + j]; }
  const cplx& at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * dim + j];
  }
  double trace_real() const;
  bool is_hermitian(double tol = 1e-10) const;
};

// Reduced state of qubits 0..cut-1, tracing out qubits cut..N-1.
// cut = 0 yields the trivial 1x1 matrix [1].
DensityMatrix reduced_density_matrix(const StateVector& state, int cut);

struct EigenResult {
  int dim = 0;
  std::vector<double> eigenvalues;  // ascending
  std::vector<cplx> vectors;        // row-major; column k is eigenvector k
};

// Cyclic complex Jacobi diagonalization of a Hermitian matrix (row-major),
// dim <= 256. Iterates until the off-diagonal Frobenius norm falls below
// 1e-12 relative to the matrix norm.
EigenResult hermitian_eigen(const std::vector<cplx>& m, int dim);

// Von Neumann entropy in bits: -sum lambda log2 lambda over eigenvalues
// above the floor 1e-12.
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace xyvqe
