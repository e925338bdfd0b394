#include "xyvqe/model.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace xyvqe {

std::vector<PauliString> term_list(const XYModel& m) {
  const int n = m.num_sites;
  std::vector<PauliString> terms;
  terms.reserve(static_cast<std::size_t>(n) * n);
  for (char pauli : {'X', 'Y'}) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        PauliString t;
        t.coefficient = -m.coupling;
        t.letters.assign(n, 'I');
        t.letters[i] = pauli;
        t.letters[j] = pauli;
        terms.push_back(std::move(t));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    PauliString t;
    t.coefficient = -m.field;
    t.letters.assign(n, 'I');
    t.letters[i] = 'Z';
    terms.push_back(std::move(t));
  }
  return terms;
}

namespace {

// Accumulates coeff * P onto the dense matrix using the bit-flip/phase
// structure of Pauli strings instead of explicit Kronecker products.
void add_pauli_term(std::vector<cplx>& h, std::uint64_t dim,
                    const PauliString& term) {
  const int n = static_cast<int>(term.letters.size());
  std::uint64_t flip = 0;
  for (int q = 0; q < n; ++q) {
    const char c = term.letters[q];
    if (c == 'X' || c == 'Y') flip |= std::uint64_t{1} << q;
  }
  for (std::uint64_t col = 0; col < dim; ++col) {
    cplx val = term.coefficient;
    for (int q = 0; q < n; ++q) {
      const bool bit = (col >> q) & 1;
      switch (term.letters[q]) {
        case 'Z':
          if (bit) val = -val;
          break;
        case 'Y':
          // Y|0> = i|1>, Y|1> = -i|0>
          val *= bit ? cplx{0, -1} : cplx{0, 1};
          break;
        default:
          break;
      }
    }
    const std::uint64_t row = col ^ flip;
    h[row * dim + col] += val;
  }
}

}  // namespace

std::vector<cplx> dense_hamiltonian(const XYModel& m) {
  if (m.num_sites > 8)
    throw std::length_error("dense_hamiltonian: N > 8 not supported");
  const std::uint64_t dim = std::uint64_t{1} << m.num_sites;
  std::vector<cplx> h(dim * dim, cplx{0, 0});
  for (const auto& term : term_list(m)) add_pauli_term(h, dim, term);
  return h;
}

double sym_energy_per_site(int n, int num_sites, double coupling,
                           double field) {
  if (n < 0 || n > num_sites)
    throw std::invalid_argument("sym_energy_per_site: n out of range");
  const double frac = static_cast<double>(n) / num_sites;
  return (1 - 2 * frac) * field - 2 * coupling * n * (1 - frac);
}

GroundEnergy exact_ground_energy_per_site(int num_sites, double coupling,
                                          double field) {
  GroundEnergy g;
  g.energy_per_site = sym_energy_per_site(0, num_sites, coupling, field);
  g.n_star = 0;
  const double tol = 1e-12 * std::max({1.0, std::abs(coupling), std::abs(field)});
  for (int n = 1; n <= num_sites; ++n) {
    const double e = sym_energy_per_site(n, num_sites, coupling, field);
    if (e < g.energy_per_site - tol) {
      g.energy_per_site = e;
      g.n_star = n;
      g.degenerate = false;
      g.n_alt = -1;
    } else if (std::abs(e - g.energy_per_site) <= tol) {
      g.degenerate = true;
      if (g.n_alt < 0) g.n_alt = n;
    }
  }
  return g;
}

std::vector<double> critical_fields(int num_sites, double coupling) {
  std::vector<double> hs;
  hs.reserve(num_sites);
  for (int n = 0; n < num_sites; ++n)
    hs.push_back(coupling * (2 * n + 1 - num_sites));
  return hs;
}

StateVector dicke_state(int num_sites, int n) {
  if (n < 0 || n > num_sites)
    throw std::invalid_argument("dicke_state: n out of range");
  StateVector s = zero_state(num_sites);
  s.amps[0] = 0;
  std::uint64_t count = 0;
  for (std::uint64_t b = 0; b < s.amps.size(); ++b)
    if (std::popcount(b) == n) ++count;
  const double amp = 1.0 / std::sqrt(static_cast<double>(count));
  for (std::uint64_t b = 0; b < s.amps.size(); ++b)
    if (std::popcount(b) == n) s.amps[b] = amp;
  return s;
}

GroundState exact_ground_state(int num_sites, double coupling, double field) {
  const GroundEnergy g =
      exact_ground_energy_per_site(num_sites, coupling, field);
  GroundState gs;
  // n excitations are raised (bit 0, Z = +1) spins on the |1...1> vacuum
  // annihilated by S-, so the weight-(N - n) Dicke state is the eigenstate
  // of the dense Hamiltonian with energy E_sym(n).
  gs.state = dicke_state(num_sites, num_sites - g.n_star);
  gs.energy_per_site = g.energy_per_site;
  gs.n_star = g.n_star;
  gs.degenerate = g.degenerate;
  gs.n_alt = g.n_alt;
  return gs;
}

double mf_energy(const std::vector<double>& thetas,
                 const std::vector<double>& phis, double coupling,
                 double field) {
  if (thetas.size() != phis.size())
    throw std::invalid_argument("mf_energy: array length mismatch");
  const int n = static_cast<int>(thetas.size());
  double e = 0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q)
      e -= coupling * std::sin(thetas[p]) * std::sin(thetas[q]) *
           std::cos(phis[p] - phis[q]);
    e -= field * std::cos(thetas[p]);
  }
  return e;
}

std::array<double, 3> bloch_vector(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

}  // namespace xyvqe
