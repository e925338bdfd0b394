#include <doctest.h>

#include <cmath>
#include <numbers>

#include "xyvqe/model.hpp"
#include "xyvqe/qstate.hpp"

using namespace xyvqe;
using std::numbers::pi;

namespace {

StateVector random_state(int n, Rng& rng) {
  StateVector s = zero_state(n);
  double norm = 0;
  for (auto& a : s.amps) {
    a = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    norm += std::norm(a);
  }
  for (auto& a : s.amps) a /= std::sqrt(norm);
  return s;
}

}  // namespace

TEST_CASE("zero_state basics") {
  auto s1 = zero_state(1);
  CHECK(s1.amps.size() == 2);
  CHECK(s1.amps[0] == cplx{1, 0});
  CHECK(s1.amps[1] == cplx{0, 0});

  auto s2 = zero_state(2);
  CHECK(s2.amps.size() == 4);
  CHECK(s2.amps[0] == cplx{1, 0});

  auto s4 = zero_state(4);
  CHECK(s4.amps.size() == 16);
  CHECK(s4.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(zero_state(0), std::length_error);
  CHECK_THROWS_AS(zero_state(25), std::length_error);
}

TEST_CASE("single-qubit rotations") {
  auto s = zero_state(1);
  apply_1q(s, ry_gate(pi), 0);
  CHECK(std::abs(s.amps[1] - cplx{1, 0}) < 1e-12);  // Ry(pi)|0> = |1>

  s = zero_state(1);
  apply_1q(s, ry_gate(0), 0);
  CHECK(std::abs(s.amps[0] - cplx{1, 0}) < 1e-12);

  s = zero_state(1);
  apply_1q(s, ry_gate(pi / 2), 0);
  CHECK(std::abs(s.amps[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(s.amps[1] - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("controlled gates") {
  // |10>: q0 = 1 (control), q1 = 0 (target) -> basis index 1
  auto s = zero_state(2);
  s.amps[0] = 0;
  s.amps[1] = 1;
  apply_ctrl_1q(s, pauli_x_gate(), 0, 1);
  CHECK(std::abs(s.amps[3] - cplx{1, 0}) < 1e-12);

  s = zero_state(2);
  s.amps[0] = 0;
  s.amps[1] = 1;
  apply_ctrl_1q(s, rx_gate(pi), 0, 1);
  CHECK(std::abs(s.amps[3] - cplx{0, -1}) < 1e-12);  // CRX(pi)|10> = -i|11>

  // control bit 0: |01> (q1 = 1) untouched when control = q0
  s = zero_state(2);
  s.amps[0] = 0;
  s.amps[2] = 1;
  apply_ctrl_1q(s, rx_gate(0.7), 0, 1);
  CHECK(std::abs(s.amps[2] - cplx{1, 0}) < 1e-12);

  CHECK_THROWS_AS(apply_ctrl_1q(s, pauli_x_gate(), 1, 1),
                  std::invalid_argument);
}

TEST_CASE("two-qubit rotations") {
  auto s = zero_state(2);
  apply_2q_rotation(s, Axis2Q::XX, 0, 0, 1);
  CHECK(std::abs(s.amps[0] - cplx{1, 0}) < 1e-12);

  const double th = 0.9;
  s = zero_state(2);
  apply_2q_rotation(s, Axis2Q::XX, th, 0, 1);
  CHECK(std::abs(s.amps[0] - std::cos(th / 2)) < 1e-12);
  CHECK(std::abs(s.amps[3] - cplx{0, -std::sin(th / 2)}) < 1e-12);

  s = zero_state(2);
  apply_2q_rotation(s, Axis2Q::YY, pi, 0, 1);
  CHECK(std::abs(s.amps[3] - cplx{0, 1}) < 1e-12);  // Ryy(pi)|00> = +i|11>

  CHECK_THROWS_AS(apply_2q_rotation(s, Axis2Q::XX, 1.0, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("inner product and fidelity") {
  Rng rng(7);
  auto psi = random_state(3, rng);
  CHECK(std::abs(inner_product(psi, psi) - 1.0) < 1e-12);

  auto zero = zero_state(1);
  auto one = zero_state(1);
  one.amps = {0.0, 1.0};
  CHECK(std::abs(inner_product(zero, one)) < 1e-15);
  CHECK(fidelity(zero, one) == doctest::Approx(0.0));

  auto plus = zero_state(1);
  apply_1q(plus, ry_gate(pi / 2), 0);
  CHECK(std::abs(inner_product(zero, plus) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(fidelity(zero, plus) == doctest::Approx(0.5).epsilon(1e-12));

  // global phase invariance
  auto phased = psi;
  for (auto& a : phased.amps) a *= std::exp(cplx{0, 1.234});
  CHECK(fidelity(psi, phased) == doctest::Approx(1.0).epsilon(1e-12));

  auto other = zero_state(2);
  CHECK_THROWS_AS((void)inner_product(zero, other), std::invalid_argument);
}

TEST_CASE("norm preserved over long random gate sequences") {
  Rng rng(42);
  auto s = zero_state(6);
  for (int k = 0; k < 10000; ++k) {
    const int q = static_cast<int>(rng.below(6));
    const double th = rng.uniform(-pi, pi);
    switch (rng.below(4)) {
      case 0: apply_1q(s, ry_gate(th), q); break;
      case 1: apply_1q(s, rz_gate(th), q); break;
      case 2: {
        int q2 = static_cast<int>(rng.below(6));
        if (q2 == q) q2 = (q + 1) % 6;
        apply_2q_rotation(s, Axis2Q::XX, th, q, q2);
        break;
      }
      default: {
        int q2 = static_cast<int>(rng.below(6));
        if (q2 == q) q2 = (q + 1) % 6;
        apply_ctrl_1q(s, rx_gate(th), q, q2);
      }
    }
  }
  CHECK(std::abs(s.norm_sq() - 1.0) < 1e-9);
}

TEST_CASE("sampling") {
  auto s = zero_state(3);
  Rng rng(1);
  auto hist = sample_counts(s, 1 << 14, rng);
  CHECK(hist.size() == 1);
  CHECK(hist[0] == 1 << 14);

  // Bell state, binomial 5-sigma band
  auto bell = zero_state(2);
  bell.amps = {1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)};
  Rng r2(99);
  auto bh = sample_counts(bell, 1 << 14, r2);
  const double shots = 1 << 14;
  const double sigma = std::sqrt(0.5 * 0.5 / shots);
  CHECK(std::abs(bh[0] / shots - 0.5) < 5 * sigma);
  CHECK(std::abs(bh[3] / shots - 0.5) < 5 * sigma);
  CHECK(bh[0] + bh[3] == 1 << 14);

  // determinism
  Rng ra(1234), rb(1234);
  CHECK(sample_counts(bell, 5000, ra) == sample_counts(bell, 5000, rb));

  CHECK_THROWS_AS(sample_counts(bell, 0, ra), std::invalid_argument);
}

TEST_CASE("sampled frequencies track probabilities on a random state") {
  Rng rng(5);
  auto psi = random_state(4, rng);
  Rng sampler(77);
  const std::int64_t shots = 1 << 14;
  auto hist = sample_counts(psi, shots, sampler);
  for (std::size_t b = 0; b < psi.amps.size(); ++b) {
    const double p = std::norm(psi.amps[b]);
    const double freq =
        static_cast<double>(hist.count(b) ? hist[b] : 0) / shots;
    const double band = 5 * std::sqrt(p * (1 - p) / shots);
    CHECK(std::abs(freq - p) <= band + 1e-12);
  }
}

TEST_CASE("reduced density matrix") {
  // product state -> rank-1 projector at every cut
  auto s = zero_state(3);
  apply_1q(s, ry_gate(0.8), 0);
  apply_1q(s, ry_gate(1.7), 1);
  apply_1q(s, ry_gate(-0.4), 2);
  for (int cut = 0; cut <= 3; ++cut) {
    auto rho = reduced_density_matrix(s, cut);
    CHECK(rho.dim == 1 << cut);
    CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.is_hermitian());
    const auto eig = hermitian_eigen(rho.entries, rho.dim);
    CHECK(eig.eigenvalues.back() == doctest::Approx(1.0).epsilon(1e-10));
  }

  auto bell = zero_state(2);
  bell.amps = {1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)};
  auto rho = reduced_density_matrix(bell, 1);
  CHECK(std::abs(rho.at(0, 0) - 0.5) < 1e-12);
  CHECK(std::abs(rho.at(1, 1) - 0.5) < 1e-12);
  CHECK(std::abs(rho.at(0, 1)) < 1e-12);

  // Dicke(4,2) half-chain spectrum {0, 1/6, 1/6, 2/3} (Schmidt oracle)
  auto dicke = dicke_state(4, 2);
  auto rho2 = reduced_density_matrix(dicke, 2);
  auto eig = hermitian_eigen(rho2.entries, rho2.dim);
  CHECK(eig.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0 / 6).epsilon(1e-10));
  CHECK(eig.eigenvalues[2] == doctest::Approx(1.0 / 6).epsilon(1e-10));
  CHECK(eig.eigenvalues[3] == doctest::Approx(2.0 / 3).epsilon(1e-10));

  CHECK_THROWS_AS(reduced_density_matrix(bell, 3), std::invalid_argument);
}

TEST_CASE("entropy symmetry between complementary cuts") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto psi = random_state(5, rng);
    for (int x = 0; x <= 5; ++x) {
      const double left =
          von_neumann_entropy(reduced_density_matrix(psi, x));
      // right block = qubits x..4; relabel by reversing qubit order
      StateVector rev = psi;
      for (std::size_t b = 0; b < psi.amps.size(); ++b) {
        std::uint64_t rb = 0;
        for (int q = 0; q < 5; ++q)
          if (b & (1ull << q)) rb |= 1ull << (4 - q);
        rev.amps[rb] = psi.amps[b];
      }
      const double right =
          von_neumann_entropy(reduced_density_matrix(rev, 5 - x));
      CHECK(std::abs(left - right) < 1e-8);
    }
  }
}

TEST_CASE("von Neumann entropy values") {
  DensityMatrix pure;
  pure.dim = 2;
  pure.entries = {1.0, 0.0, 0.0, 0.0};
  CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0));

  DensityMatrix mixed;
  mixed.dim = 2;
  mixed.entries = {0.5, 0.0, 0.0, 0.5};
  CHECK(von_neumann_entropy(mixed) == doctest::Approx(1.0).epsilon(1e-12));

  // spectrum {1/6, 1/6, 2/3}: value frozen from an independent evaluation
  DensityMatrix d;
  d.dim = 4;
  d.entries.assign(16, cplx{0, 0});
  d.at(0, 0) = 1.0 / 6;
  d.at(1, 1) = 1.0 / 6;
  d.at(2, 2) = 2.0 / 3;
  CHECK(von_neumann_entropy(d) ==
        doctest::Approx(1.2516291673878226).epsilon(1e-12));

  DensityMatrix bad;
  bad.dim = 2;
  bad.entries = {0.5, cplx{0, 1}, cplx{0, 1}, 0.5};
  CHECK_THROWS_AS(von_neumann_entropy(bad), std::invalid_argument);
}

TEST_CASE("hermitian_eigen") {
  // diagonal matrix
  std::vector<cplx> diag = {3.0, 0.0, 0.0, -1.0};
  auto r = hermitian_eigen(diag, 2);
  CHECK(r.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(r.eigenvalues[1] == doctest::Approx(3.0));

  // Pauli X
  std::vector<cplx> x = {0.0, 1.0, 1.0, 0.0};
  r = hermitian_eigen(x, 2);
  CHECK(r.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));

  // random Hermitian 8x8: residual and orthonormality
  const int n = 8;
  Rng rng(3);
  std::vector<cplx> m(n * n);
  for (int i = 0; i < n; ++i) {
    m[i * n + i] = rng.uniform(-2, 2);
    for (int j = i + 1; j < n; ++j) {
      m[i * n + j] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      m[j * n + i] = std::conj(m[i * n + j]);
    }
  }
  r = hermitian_eigen(m, n);
  double norm = 0;
  for (const auto& v : m) norm += std::norm(v);
  norm = std::sqrt(norm);
  for (int k = 0; k < n; ++k) {
    double res = 0;
    for (int i = 0; i < n; ++i) {
      cplx mv{0, 0};
      for (int j = 0; j < n; ++j) mv += m[i * n + j] * r.vectors[j * n + k];
      res += std::norm(mv - r.eigenvalues[k] * r.vectors[i * n + k]);
    }
    CHECK(std::sqrt(res) <= 1e-8 * norm);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      cplx dot{0, 0};
      for (int i = 0; i < n; ++i)
        dot += std::conj(r.vectors[i * n + k]) * r.vectors[i * n + l];
      CHECK(std::abs(dot - (k == l ? 1.0 : 0.0)) < 1e-9);
    }
  }

  std::vector<cplx> nonherm = {0.0, 1.0, 2.0, 0.0};
  CHECK_THROWS_AS(hermitian_eigen(nonherm, 2), std::invalid_argument);
}

TEST_CASE("CRX(pi) matches CNOT in magnitude on every basis index") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto psi = random_state(3, rng);
    auto a = psi, b = psi;
    apply_ctrl_1q(a, pauli_x_gate(), 0, 2);
    apply_ctrl_1q(b, rx_gate(pi), 0, 2);
    for (std::size_t k = 0; k < a.amps.size(); ++k)
      CHECK(std::abs(std::abs(a.amps[k]) - std::abs(b.amps[k])) < 1e-12);
  }
}
