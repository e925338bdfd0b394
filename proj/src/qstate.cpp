#include "xyvqe/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace xyvqe {

namespace {
constexpr cplx kI{0.0, 1.0};
}

Mat2 rx_gate(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return {cplx{c, 0}, -kI * s, -kI * s, cplx{c, 0}};
}

Mat2 ry_gate(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
}

Mat2 rz_gate(double angle) {
  const double h = angle / 2;
  return {std::exp(-kI * h), 0.0, 0.0, std::exp(kI * h)};
}

Mat2 pauli_x_gate() { return {0.0, 1.0, 1.0, 0.0}; }

bool is_unitary_2x2(const Mat2& u, double tol) {
  // U U^dagger = I
  const cplx d00 = u[0] * std::conj(u[0]) + u[1] * std::conj(u[1]);
  const cplx d01 = u[0] * std::conj(u[2]) + u[1] * std::conj(u[3]);
  const cplx d11 = u[2] * std::conj(u[2]) + u[3] * std::conj(u[3]);
  return std::abs(d00 - 1.0) < tol && std::abs(d01) < tol &&
         std::abs(d11 - 1.0) < tol;
}

double StateVector::norm_sq() const {
  double s = 0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

StateVector zero_state(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw std::length_error("zero_state: qubit count " +
                            std::to_string(num_qubits) + " outside [1, " +
                            std::to_string(kMaxQubits) + "]");
  StateVector s;
  s.num_qubits = num_qubits;
  s.amps.assign(std::size_t{1} << num_qubits, cplx{0, 0});
  s.amps[0] = 1.0;
  return s;
}

void apply_1q(StateVector& state, const Mat2& u, int target) {
  if (target < 0 || target >= state.num_qubits)
    throw std::invalid_argument("apply_1q: target out of range");
#ifndef NDEBUG
  if (!is_unitary_2x2(u)) throw std::invalid_argument("apply_1q: non-unitary u");
#endif
  const std::uint64_t dim = state.amps.size();
  const std::uint64_t bit = std::uint64_t{1} << target;
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & bit) continue;
    const cplx a0 = state.amps[b];
    const cplx a1 = state.amps[b | bit];
    state.amps[b] = u[0] * a0 + u[1] * a1;
    state.amps[b | bit] = u[2] * a0 + u[3] * a1;
  }
}

void apply_ctrl_1q(StateVector& state, const Mat2& u, int control, int target) {
  if (control == target)
    throw std::invalid_argument("apply_ctrl_1q: control equals target");
  if (control < 0 || control >= state.num_qubits || target < 0 ||
      target >= state.num_qubits)
    throw std::invalid_argument("apply_ctrl_1q: qubit out of range");
  const std::uint64_t dim = state.amps.size();
  const std::uint64_t cbit = std::uint64_t{1} << control;
  const std::uint64_t tbit = std::uint64_t{1} << target;
  for (std::uint64_t b = 0; b < dim; ++b) {
    if ((b & tbit) || !(b & cbit)) continue;
    const cplx a0 = state.amps[b];
    const cplx a1 = state.amps[b | tbit];
    state.amps[b] = u[0] * a0 + u[1] * a1;
    state.amps[b | tbit] = u[2] * a0 + u[3] * a1;
  }
}

void apply_2q_rotation(StateVector& state, Axis2Q axis, double angle, int i,
                       int j) {
  if (i == j) throw std::invalid_argument("apply_2q_rotation: i equals j");
  if (i < 0 || i >= state.num_qubits || j < 0 || j >= state.num_qubits)
    throw std::invalid_argument("apply_2q_rotation: qubit out of range");
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  const std::uint64_t dim = state.amps.size();
  const std::uint64_t bi = std::uint64_t{1} << i;
  const std::uint64_t bj = std::uint64_t{1} << j;
  const std::uint64_t mask = bi | bj;
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & bi) continue;  // visit each {b, b^mask} pair twice via bj branch
    // pair (b, b^mask) with bit i clear in b; the complementary pair has
    // bit i set in b^mask's partner, so this covers all pairs exactly once
    const std::uint64_t p = b ^ mask;
    const cplx a0 = state.amps[b];
    const cplx a1 = state.amps[p];
    if (axis == Axis2Q::XX) {
      // X(x)X swaps the pair with no sign
      state.amps[b] = c * a0 - kI * s * a1;
      state.amps[p] = c * a1 - kI * s * a0;
    } else {
      // Y(x)Y swaps with sign -1 when bits i,j agree, +1 when they differ
      const double s0 = ((b & bj) != 0) ? 1.0 : -1.0;  // sign of YY|p> -> |b>
      state.amps[b] = c * a0 - kI * s * s0 * a1;
      state.amps[p] = c * a1 - kI * s * s0 * a0;
    }
  }
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits != b.num_qubits)
    throw std::invalid_argument("inner_product: size mismatch");
  cplx acc{0, 0};
  for (std::size_t k = 0; k < a.amps.size(); ++k)
    acc += std::conj(a.amps[k]) * b.amps[k];
  return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

Histogram sample_counts(const StateVector& state, std::int64_t shots,
                        Rng& rng) {
  if (shots <= 0) throw std::invalid_argument("sample_counts: shots must be positive");
  std::vector<double> cdf(state.amps.size());
  double acc = 0;
  for (std::size_t b = 0; b < state.amps.size(); ++b) {
    acc += std::norm(state.amps[b]);
    cdf[b] = acc;
  }
  Histogram hist;
  for (std::int64_t s = 0; s < shots; ++s) {
    const double r = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    const std::uint64_t b =
        static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
            it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    ++hist[b];
  }
  return hist;
}

double DensityMatrix::trace_real() const {
  double t = 0;
  for (int i = 0; i < dim; ++i) t += at(i, i).real();
  return t;
}

bool DensityMatrix::is_hermitian(double tol) const {
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
  return true;
}

DensityMatrix reduced_density_matrix(const StateVector& state, int cut) {
  const int n = state.num_qubits;
  if (cut < 0 || cut > n)
    throw std::invalid_argument("reduced_density_matrix: cut out of range");
  const int kept = cut;
  const std::uint64_t dl = std::uint64_t{1} << kept;        // kept block
  const std::uint64_t dr = std::uint64_t{1} << (n - kept);  // traced block
  DensityMatrix rho;
  rho.dim = static_cast<int>(dl);
  rho.entries.assign(dl * dl, cplx{0, 0});
  // kept qubits are the low bits of the basis index
  for (std::uint64_t r = 0; r < dr; ++r) {
    const std::uint64_t base = r << kept;
    for (std::uint64_t i = 0; i < dl; ++i) {
      const cplx ai = state.amps[base | i];
      if (ai == cplx{0, 0}) continue;
      for (std::uint64_t j = 0; j < dl; ++j)
        rho.entries[i * dl + j] += ai * std::conj(state.amps[base | j]);
    }
  }
  return rho;
}

EigenResult hermitian_eigen(const std::vector<cplx>& m, int dim) {
  if (dim < 1 || dim > 256)
    throw std::invalid_argument("hermitian_eigen: dim out of range");
  if (m.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument("hermitian_eigen: size mismatch");
  std::vector<cplx> a = m;
  auto A = [&](int i, int j) -> cplx& {
    return a[static_cast<std::size_t>(i) * dim + j];
  };
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      if (std::abs(A(i, j) - std::conj(A(j, i))) > 1e-10)
        throw std::invalid_argument("hermitian_eigen: matrix not Hermitian");

  std::vector<cplx> v(static_cast<std::size_t>(dim) * dim, cplx{0, 0});
  auto V = [&](int i, int j) -> cplx& {
    return v[static_cast<std::size_t>(i) * dim + j];
  };
  for (int i = 0; i < dim; ++i) V(i, i) = 1.0;

  double fro = 0;
  for (const auto& x : a) fro += std::norm(x);
  fro = std::sqrt(fro);
  const double stop = 1e-12 * std::max(1.0, fro);

  auto off_norm = [&] {
    double s = 0;
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) s += 2 * std::norm(A(i, j));
    return std::sqrt(s);
  };

  const int max_sweeps = 100;
  int sweep = 0;
  while (off_norm() > stop) {
    if (++sweep > max_sweeps)
      throw std::runtime_error(
          "hermitian_eigen: Jacobi failed to converge, off-diagonal norm " +
          std::to_string(off_norm()));
    for (int p = 0; p < dim; ++p) {
      for (int q = p + 1; q < dim; ++q) {
        const cplx apq = A(p, q);
        const double r = std::abs(apq);
        if (r <= stop / dim) continue;
        const cplx phase = apq / r;  // apq = r * phase
        const double app = A(p, p).real();
        const double aqq = A(q, q).real();
        const double tau = (app - aqq) / (2 * r);
        const double t =
            (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        const double c = 1.0 / std::sqrt(1 + t * t);
        const double s = t * c;
        // J has columns (p,q): [c, -s*phase; s*conj(phase), c]
        const cplx jp = -s * phase;
        const cplx jq = s * std::conj(phase);
        // A <- J^dagger A J : update columns then rows
        for (int i = 0; i < dim; ++i) {
          const cplx aip = A(i, p), aiq = A(i, q);
          A(i, p) = c * aip + jq * aiq;
          A(i, q) = jp * aip + c * aiq;
        }
        for (int i = 0; i < dim; ++i) {
          const cplx api = A(p, i), aqi = A(q, i);
          A(p, i) = c * api + std::conj(jq) * aqi;
          A(q, i) = std::conj(jp) * api + c * aqi;
        }
        for (int i = 0; i < dim; ++i) {
          const cplx vip = V(i, p), viq = V(i, q);
          V(i, p) = c * vip + jq * viq;
          V(i, q) = jp * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return A(i, i).real() < A(j, j).real(); });

  EigenResult res;
  res.dim = dim;
  res.eigenvalues.resize(dim);
  res.vectors.assign(static_cast<std::size_t>(dim) * dim, cplx{0, 0});
  for (int k = 0; k < dim; ++k) {
    res.eigenvalues[k] = A(order[k], order[k]).real();
    for (int i = 0; i < dim; ++i)
      res.vectors[static_cast<std::size_t>(i) * dim + k] = V(i, order[k]);
  }
  return res;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  if (!rho.is_hermitian())
    throw std::invalid_argument("von_neumann_entropy: rho not Hermitian");
  if (rho.dim == 1) return 0.0;
  const auto eig = hermitian_eigen(rho.entries, rho.dim);
  constexpr double eps = 1e-12;
  double s = 0;
  for (double lam : eig.eigenvalues)
    if (lam > eps) s -= lam * std::log2(lam);
  return s;
}

}  // namespace xyvqe
