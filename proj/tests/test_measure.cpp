#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "xyvqe/measure.hpp"

using namespace xyvqe;

namespace {

const double kPi = std::acos(-1.0);

// <psi|H|psi> through the dense matrix, independent of pauli_expectation.
double dense_energy(const StateVector& st, const XYModel& m) {
  const auto h = dense_hamiltonian(m);
  const std::uint64_t dim = st.amps.size();
  cplx acc{0, 0};
  for (std::uint64_t i = 0; i < dim; ++i)
    for (std::uint64_t j = 0; j < dim; ++j)
      acc += std::conj(st.amps[i]) * h[i * dim + j] * st.amps[j];
  return acc.real();
}

StateVector bell_state() {
  StateVector st = zero_state(2);
  st.amps[0] = 1 / std::sqrt(2.0);
  st.amps[3] = 1 / std::sqrt(2.0);
  return st;
}

}  // namespace

TEST_CASE("basis rotations map eigenbases to Z") {
  // RY(-pi/2) |+> = |0>
  StateVector st = zero_state(1);
  st.amps = {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
  apply_1q(st, basis_rotation(Basis::X), 0);
  CHECK(std::abs(st.amps[0]) == doctest::Approx(1.0));

  // RX(pi/2) |+i> = phase * |0>
  st = zero_state(1);
  st.amps = {1 / std::sqrt(2.0), cplx{0, 1} / std::sqrt(2.0)};
  apply_1q(st, basis_rotation(Basis::Y), 0);
  CHECK(std::abs(st.amps[0]) == doctest::Approx(1.0));

  // Z rotation is the identity
  const Mat2 id = basis_rotation(Basis::Z);
  CHECK(std::abs(id[0] - cplx{1, 0}) < 1e-15);
  CHECK(std::abs(id[1]) < 1e-15);
  CHECK(std::abs(id[2]) < 1e-15);
  CHECK(std::abs(id[3] - cplx{1, 0}) < 1e-15);
}

TEST_CASE("histogram estimators") {
  Histogram counts;
  counts[0b00] = 40;  // z0=+1 z1=+1
  counts[0b01] = 30;  // z0=-1 z1=+1
  counts[0b10] = 20;  // z0=+1 z1=-1
  counts[0b11] = 10;  // z0=-1 z1=-1
  const std::int64_t shots = 100;
  CHECK(estimate_z(counts, 0, shots) == doctest::Approx(0.2));
  CHECK(estimate_z(counts, 1, shots) == doctest::Approx(0.4));
  CHECK(estimate_zz(counts, 0, 1, shots) == doctest::Approx(0.0));
  CHECK(estimate_zz(counts, 1, 0, shots) == doctest::Approx(0.0));
}

TEST_CASE("pauli expectations on reference states") {
  const auto bell = bell_state();
  CHECK(pauli_expectation(bell, {1.0, "XX"}) == doctest::Approx(1.0));
  CHECK(pauli_expectation(bell, {1.0, "YY"}) == doctest::Approx(-1.0));
  CHECK(pauli_expectation(bell, {1.0, "ZZ"}) == doctest::Approx(1.0));
  CHECK(pauli_expectation(bell, {1.0, "ZI"}) == doctest::Approx(0.0));

  const auto z0 = zero_state(2);
  CHECK(pauli_expectation(z0, {1.0, "ZI"}) == doctest::Approx(1.0));
  CHECK(pauli_expectation(z0, {1.0, "XI"}) == doctest::Approx(0.0));
}

TEST_CASE("exact energy matches the dense oracle on random states") {
  AnsatzSpec spec;
  spec.num_qubits = 4;
  spec.family = Family::TQR;
  spec.connectivity = Connectivity::full();
  const auto c = build(spec);
  const XYModel m{1.0, 1.3, 4};
  Rng rng(11);
  for (int rep = 0; rep < 8; ++rep) {
    std::vector<double> params(c.num_params);
    for (auto& p : params) p = rng.uniform(-kPi, kPi);
    const auto st = run_circuit(c, params);
    CHECK(energy_exact(c, params, m) ==
          doctest::Approx(dense_energy(st, m)).epsilon(1e-9));
  }
}

TEST_CASE("sampled energy is deterministic per seed and advances the stream") {
  AnsatzSpec spec;
  spec.num_qubits = 3;
  spec.family = Family::MF;
  const auto c = build(spec);
  const XYModel m{1.0, 0.5, 3};
  std::vector<double> params(c.num_params, 0.7);

  Rng a(5), b(5);
  const auto ea = energy_sampled(c, params, m, 1024, a);
  const auto eb = energy_sampled(c, params, m, 1024, b);
  CHECK(ea.value == eb.value);
  CHECK(ea.std_error == eb.std_error);
  CHECK(ea.shots_per_setting == 1024);
  CHECK(ea.mode == EnergyMode::SAMPLED);

  // a fresh call on the same generator uses new shots
  const auto ec = energy_sampled(c, params, m, 1024, a);
  CHECK(ec.value != ea.value);
}

TEST_CASE("sampled energy is unbiased within 5 sigma") {
  AnsatzSpec spec;
  spec.num_qubits = 4;
  spec.family = Family::CRX;
  spec.connectivity = Connectivity::linear();
  const auto c = build(spec);
  const XYModel m{1.0, 1.0, 4};
  Rng prng(3);
  std::vector<double> params(c.num_params);
  for (auto& p : params) p = prng.uniform(-kPi, kPi);
  const double exact = energy_exact(c, params, m);

  for (bool per_term : {false, true}) {
    Rng rng(77);
    const int draws = 200;
    double sum = 0, se = 0;
    for (int k = 0; k < draws; ++k) {
      const auto e = energy_sampled(c, params, m, 2048, rng, per_term);
      sum += e.value;
      se = e.std_error;
      CHECK(e.std_error > 0);
    }
    const double mean = sum / draws;
    CHECK(std::abs(mean - exact) <= 5 * se / std::sqrt(double(draws)));
  }
}

TEST_CASE("sampled energy converges to exact as shots grow") {
  AnsatzSpec spec;
  spec.num_qubits = 4;
  spec.family = Family::TQR;
  spec.connectivity = Connectivity::full();
  const auto c = build(spec);
  const XYModel m{1.0, 0.0, 4};
  Rng prng(21);
  std::vector<double> params(c.num_params);
  for (auto& p : params) p = prng.uniform(-kPi, kPi);
  const double exact = energy_exact(c, params, m);

  Rng rng(13);
  const auto e = energy_sampled(c, params, m, 1 << 16, rng);
  CHECK(std::abs(e.value - exact) <= 5 * e.std_error);
}

TEST_CASE("sampled energy rejects nonpositive shots") {
  AnsatzSpec spec;
  spec.num_qubits = 2;
  spec.family = Family::MF;
  const auto c = build(spec);
  const XYModel m{1.0, 0.0, 2};
  std::vector<double> params(c.num_params, 0.0);
  Rng rng(1);
  CHECK_THROWS_AS(energy_sampled(c, params, m, 0, rng), std::invalid_argument);
}
