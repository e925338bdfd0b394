#include "xyvqe/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "xyvqe/entropylab.hpp"
#include "xyvqe/model.hpp"
#include "xyvqe/vqe.hpp"

namespace xyvqe {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

const std::pair<const char*, ExperimentKind> kExperiments[] = {
    {"exact-sweep", ExperimentKind::ExactSweep},
    {"mf-sweep", ExperimentKind::MfSweep},
    {"vqe-sweep", ExperimentKind::VqeSweep},
    {"gate-orders", ExperimentKind::GateOrders},
    {"layers", ExperimentKind::Layers},
    {"entropy-max", ExperimentKind::EntropyMax},
    {"entropy-range", ExperimentKind::EntropyRange},
    {"entropy-growth", ExperimentKind::EntropyGrowth},
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 32; ++i) g.push_back(-4.0 + 0.25 * i);
  return g;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::MF: return "MF";
    case Family::CNOT: return "CNOT";
    case Family::CRX: return "CRX";
    case Family::TQR: return "TQR";
  }
  return "?";
}

const char* connectivity_name(Connectivity::Kind k) {
  switch (k) {
    case Connectivity::Kind::Linear: return "linear";
    case Connectivity::Kind::Full: return "full";
    case Connectivity::Kind::Range: return "range";
    case Connectivity::Kind::Explicit: return "explicit";
  }
  return "?";
}

std::string pair_list_string(const std::vector<std::pair<int, int>>& pairs) {
  std::string s;
  for (const auto& [a, b] : pairs)
    s += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  return s;
}

// Mean-field reference energy per site: numeric minimum of the analytic
// mean-field energy over the 2N Bloch angles.
double mf_reference_per_site(int n, double coupling, double field,
                             std::uint64_t seed) {
  Objective obj = [&](std::span<const double> p) {
    std::vector<double> thetas(p.begin(), p.begin() + n);
    std::vector<double> phis(p.begin() + n, p.end());
    return mf_energy(thetas, phis, coupling, field);
  };
  OptimizerConfig cfg;
  cfg.method = Method::NELDER_MEAD;
  cfg.max_evals = 8000;
  cfg.seed = seed;
  return multi_start(obj, 2 * n, 6, cfg).best_value / n;
}

VqeConfig to_vqe_config(const ExperimentConfig& cfg) {
  VqeConfig v;
  v.model = {cfg.coupling, 0.0, cfg.num_qubits};
  v.ansatz = cfg.ansatz_spec();
  v.mode = cfg.mode;
  v.shots_per_setting = cfg.shots;
  v.per_term_measurement = cfg.per_term;
  v.optimizer.max_evals = cfg.max_evals;
  v.optimizer.tolerance_f = cfg.tolerance_f;
  v.optimizer.tolerance_x = cfg.tolerance_x;
  if (cfg.optimizer) {
    v.optimizer.method = *cfg.optimizer;
    v.auto_method = false;
  }
  v.restarts = cfg.restarts;
  v.seed = cfg.seed;
  return v;
}

OptimizerConfig entropy_optimizer(const ExperimentConfig& cfg) {
  OptimizerConfig opt;
  opt.method = cfg.optimizer.value_or(Method::POWELL);
  opt.max_evals = cfg.max_evals;
  opt.tolerance_f = cfg.tolerance_f;
  opt.tolerance_x = cfg.tolerance_x;
  opt.seed = cfg.seed;
  return opt;
}

}  // namespace

const char* experiment_name(ExperimentKind k) {
  for (const auto& [name, kind] : kExperiments)
    if (kind == k) return name;
  return "?";
}

AnsatzSpec ExperimentConfig::ansatz_spec() const {
  AnsatzSpec spec;
  spec.family = family;
  spec.num_qubits = num_qubits;
  spec.layers = layers;
  switch (connectivity) {
    case Connectivity::Kind::Linear:
      spec.connectivity = Connectivity::linear();
      break;
    case Connectivity::Kind::Full:
      spec.connectivity = Connectivity::full();
      break;
    case Connectivity::Kind::Range:
      spec.connectivity = Connectivity::with_range(range_r);
      break;
    case Connectivity::Kind::Explicit:
      spec.connectivity = Connectivity::explicit_order(explicit_pairs);
      break;
  }
  return spec;
}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!doc.is_object())
    throw std::invalid_argument("config: top level must be an object");

  static const std::set<std::string> known = {
      "experiment", "N", "J", "h_grid", "family", "connectivity", "range_r",
      "explicit_pairs", "layers", "mode", "shots", "per_term", "optimizer",
      "max_evals", "tolerance_f", "tolerance_x", "restarts", "seed", "jobs",
      "orders_count", "snapshot_evals", "out"};
  std::string unknown;
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) unknown += (unknown.empty() ? "" : ", ") + key;
  if (!unknown.empty())
    throw std::invalid_argument("config: unknown keys: " + unknown);
  if (!doc.contains("experiment"))
    throw std::invalid_argument("config: missing required key: experiment");

  ExperimentConfig cfg;
  const std::string exp = doc.at("experiment").get<std::string>();
  bool found = false;
  for (const auto& [name, kind] : kExperiments)
    if (exp == name) { cfg.experiment = kind; found = true; }
  if (!found)
    throw std::invalid_argument("config: invalid experiment \"" + exp + "\"");

  cfg.num_qubits = doc.value("N", 4);
  cfg.coupling = doc.value("J", 1.0);
  if (doc.contains("h_grid")) {
    cfg.h_grid = doc.at("h_grid").get<std::vector<double>>();
    for (std::size_t i = 1; i < cfg.h_grid.size(); ++i)
      if (cfg.h_grid[i] <= cfg.h_grid[i - 1])
        throw std::invalid_argument("config: h_grid must be strictly increasing");
    if (cfg.h_grid.empty())
      throw std::invalid_argument("config: h_grid must be non-empty");
  } else {
    cfg.h_grid = default_grid();
  }
  if (doc.contains("family")) {
    const std::string f = doc.at("family").get<std::string>();
    if (f == "MF") cfg.family = Family::MF;
    else if (f == "CNOT") cfg.family = Family::CNOT;
    else if (f == "CRX") cfg.family = Family::CRX;
    else if (f == "TQR") cfg.family = Family::TQR;
    else throw std::invalid_argument("config: invalid family \"" + f + "\"");
  }
  if (doc.contains("connectivity")) {
    const std::string c = doc.at("connectivity").get<std::string>();
    if (c == "linear") cfg.connectivity = Connectivity::Kind::Linear;
    else if (c == "full") cfg.connectivity = Connectivity::Kind::Full;
    else if (c == "range") cfg.connectivity = Connectivity::Kind::Range;
    else if (c == "explicit") cfg.connectivity = Connectivity::Kind::Explicit;
    else throw std::invalid_argument("config: invalid connectivity \"" + c + "\"");
  }
  cfg.range_r = doc.value("range_r", 1);
  if (doc.contains("explicit_pairs"))
    for (const auto& p : doc.at("explicit_pairs"))
      cfg.explicit_pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  cfg.layers = doc.value("layers", 1);
  if (doc.contains("mode")) {
    const std::string m = doc.at("mode").get<std::string>();
    if (m == "exact") cfg.mode = EnergyMode::EXACT;
    else if (m == "sampled") cfg.mode = EnergyMode::SAMPLED;
    else throw std::invalid_argument("config: invalid mode \"" + m + "\"");
  }
  cfg.shots = doc.value("shots", std::int64_t{1} << 14);
  cfg.per_term = doc.value("per_term", false);
  if (doc.contains("optimizer")) {
    const std::string o = doc.at("optimizer").get<std::string>();
    if (o == "nelder-mead") cfg.optimizer = Method::NELDER_MEAD;
    else if (o == "powell") cfg.optimizer = Method::POWELL;
    else if (o == "spsa") cfg.optimizer = Method::SPSA;
    else throw std::invalid_argument("config: invalid optimizer \"" + o + "\"");
  }
  cfg.max_evals = doc.value("max_evals", 20000);
  cfg.tolerance_f = doc.value("tolerance_f", 1e-8);
  cfg.tolerance_x = doc.value("tolerance_x", 1e-8);
  cfg.restarts = doc.value("restarts", 10);
  cfg.seed = doc.value("seed", std::uint64_t{0});
  cfg.jobs = doc.value("jobs", 1);
  cfg.orders_count = doc.value("orders_count", 10);
  if (doc.contains("snapshot_evals"))
    cfg.snapshot_evals = doc.at("snapshot_evals").get<std::vector<int>>();
  cfg.out = doc.value("out", std::string{});
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  json doc;
  doc["experiment"] = experiment_name(cfg.experiment);
  doc["N"] = cfg.num_qubits;
  doc["J"] = cfg.coupling;
  doc["h_grid"] = cfg.h_grid;
  doc["family"] = family_name(cfg.family);
  doc["connectivity"] = connectivity_name(cfg.connectivity);
  doc["range_r"] = cfg.range_r;
  if (!cfg.explicit_pairs.empty()) {
    json pairs = json::array();
    for (const auto& [a, b] : cfg.explicit_pairs)
      pairs.push_back(json::array({a, b}));
    doc["explicit_pairs"] = pairs;
  }
  doc["layers"] = cfg.layers;
  doc["mode"] = cfg.mode == EnergyMode::EXACT ? "exact" : "sampled";
  doc["shots"] = cfg.shots;
  doc["per_term"] = cfg.per_term;
  if (cfg.optimizer) {
    doc["optimizer"] = *cfg.optimizer == Method::NELDER_MEAD ? "nelder-mead"
                       : *cfg.optimizer == Method::POWELL    ? "powell"
                                                             : "spsa";
  }
  doc["max_evals"] = cfg.max_evals;
  doc["tolerance_f"] = cfg.tolerance_f;
  doc["tolerance_x"] = cfg.tolerance_x;
  doc["restarts"] = cfg.restarts;
  doc["seed"] = cfg.seed;
  doc["jobs"] = cfg.jobs;
  doc["orders_count"] = cfg.orders_count;
  if (!cfg.snapshot_evals.empty()) doc["snapshot_evals"] = cfg.snapshot_evals;
  if (!cfg.out.empty()) doc["out"] = cfg.out;
  return doc.dump();
}

namespace {

void write_header(std::ostringstream& os, const ExperimentConfig& cfg) {
  os << "# xyvqe " << kVersion << '\n';
  os << "# config: " << serialize_config(cfg) << '\n';
}

std::string run_exact_sweep(const ExperimentConfig& cfg) {
  std::ostringstream os;
  write_header(os, cfg);
  os << "h,energy_per_site,n_star,degenerate\n";
  for (double h : cfg.h_grid) {
    const GroundEnergy g =
        exact_ground_energy_per_site(cfg.num_qubits, cfg.coupling, h);
    os << fmt(h) << ',' << fmt(g.energy_per_site) << ',' << g.n_star << ','
       << (g.degenerate ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string run_mf_sweep(const ExperimentConfig& cfg) {
  std::ostringstream os;
  write_header(os, cfg);
  os << "h,mf_energy_per_site,exact_energy_per_site\n";
  for (std::size_t i = 0; i < cfg.h_grid.size(); ++i) {
    const double h = cfg.h_grid[i];
    const double mf = mf_reference_per_site(cfg.num_qubits, cfg.coupling, h,
                                            Rng(cfg.seed).spawn(i).seed());
    const double ex =
        exact_ground_energy_per_site(cfg.num_qubits, cfg.coupling, h)
            .energy_per_site;
    os << fmt(h) << ',' << fmt(mf) << ',' << fmt(ex) << '\n';
  }
  return os.str();
}

std::string run_vqe_sweep(const ExperimentConfig& cfg,
                          std::vector<std::string>* errors) {
  std::ostringstream os;
  write_header(os, cfg);
  os << "h,energy_per_site,exact_energy_per_site,mf_energy_per_site,"
        "fidelity,restarts_used,evals\n";
  const VqeConfig base = to_vqe_config(cfg);
  const std::size_t count = cfg.h_grid.size();
  std::vector<std::string> rows(count);
  std::vector<std::string> errs(count);
  auto point_row = [&](std::size_t i) {
    const double h = cfg.h_grid[i];
    try {
      VqeConfig point = base;
      point.model.field = h;
      point.seed = Rng(cfg.seed).spawn(i).seed();
      const VqeResult r = run(point);
      const double ex =
          exact_ground_energy_per_site(cfg.num_qubits, cfg.coupling, h)
              .energy_per_site;
      const double mf = mf_reference_per_site(cfg.num_qubits, cfg.coupling, h,
                                              Rng(cfg.seed).spawn(i).seed());
      std::ostringstream row;
      row << fmt(h) << ',' << fmt(r.energy_per_site) << ',' << fmt(ex) << ','
          << fmt(mf) << ',' << fmt(r.fidelity_vs_exact) << ',' << cfg.restarts
          << ',' << r.evals_used << '\n';
      rows[i] = row.str();
    } catch (const std::exception& e) {
      errs[i] = "h=" + fmt(h) + ": " + e.what();
    }
  };
  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) point_row(i);
  } else {
    // batches of independent grid points; rows merged in grid order below
    for (std::size_t start = 0; start < count;
         start += static_cast<std::size_t>(jobs)) {
      std::vector<std::future<void>> batch;
      const std::size_t stop =
          std::min(count, start + static_cast<std::size_t>(jobs));
      for (std::size_t i = start; i < stop; ++i)
        batch.push_back(std::async(std::launch::async, point_row, i));
      for (auto& f : batch) f.get();
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    os << rows[i];
    if (errors && !errs[i].empty()) errors->push_back(errs[i]);
  }
  return os.str();
}

std::string run_gate_orders(const ExperimentConfig& cfg,
                            std::vector<std::string>* errors) {
  std::ostringstream os;
  write_header(os, cfg);
  os << "order_index,order,h,energy_per_site,fidelity\n";
  Rng rng = Rng(cfg.seed).spawn(0x02de2);
  const auto orders =
      enumerate_gate_orders(cfg.num_qubits, rng, cfg.orders_count);
  const VqeConfig base = to_vqe_config(cfg);
  for (std::size_t k = 0; k < orders.size(); ++k) {
    for (std::size_t i = 0; i < cfg.h_grid.size(); ++i) {
      const double h = cfg.h_grid[i];
      try {
        VqeConfig point = base;
        point.ansatz.connectivity = orders[k];
        point.model.field = h;
        point.seed = Rng(cfg.seed).spawn(k * 1000 + i).seed();
        const VqeResult r = run(point);
        os << k << ',' << pair_list_string(orders[k].pairs) << ',' << fmt(h)
           << ',' << fmt(r.energy_per_site) << ',' << fmt(r.fidelity_vs_exact)
           << '\n';
      } catch (const std::exception& e) {
        if (errors)
          errors->push_back("order=" + std::to_string(k) + " h=" + fmt(h) +
                            ": " + e.what());
      }
    }
  }
  return os.str();
}

std::string run_layers(const ExperimentConfig& cfg,
                       std::vector<std::string>* errors) {
  std::ostringstream os;
  write_header(os, cfg);
  os << "layers,h,energy_per_site,exact_energy_per_site,fidelity\n";
  const VqeConfig base = to_vqe_config(cfg);
  // One depth-comparison block per layer count up to the configured maximum.
  for (int layers = 1; layers <= cfg.layers; ++layers) {
    for (std::size_t i = 0; i < cfg.h_grid.size(); ++i) {
      const double h = cfg.h_grid[i];
      try {
        VqeConfig point = base;
        point.ansatz.layers = layers;
        point.model.field = h;
        point.seed =
            Rng(cfg.seed).spawn(layers * cfg.h_grid.size() + i).seed();
        const VqeResult r = run(point);
        const double ex =
            exact_ground_energy_per_site(cfg.num_qubits, cfg.coupling, h)
                .energy_per_site;
        os << layers << ',' << fmt(h) << ',' << fmt(r.energy_per_site) << ','
           << fmt(ex) << ',' << fmt(r.fidelity_vs_exact) << '\n';
      } catch (const std::exception& e) {
        if (errors)
          errors->push_back("layers=" + std::to_string(layers) +
                            " h=" + fmt(h) + ": " + e.what());
      }
    }
  }
  return os.str();
}

std::string run_entropy_max(const ExperimentConfig& cfg) {
  std::ostringstream os;
  write_header(os, cfg);
  const auto res = maximize_half_chain_entropy(
      cfg.ansatz_spec(), entropy_optimizer(cfg), cfg.restarts);
  const auto smax = max_entropy_profile(cfg.num_qubits);
  os << "cut,entropy,max_entropy\n";
  for (std::size_t x = 0; x < res.final_profile.values.size(); ++x)
    os << x << ',' << fmt(res.final_profile.values[x]) << ','
       << fmt(smax.values[x]) << '\n';
  return os.str();
}

std::string run_entropy_range(const ExperimentConfig& cfg) {
  std::ostringstream os;
  write_header(os, cfg);
  os << "r,max_entropy\n";
  for (int r = 1; r <= cfg.num_qubits - 1; ++r) {
    OptimizerConfig opt = entropy_optimizer(cfg);
    opt.seed = Rng(cfg.seed).spawn(static_cast<std::uint64_t>(r)).seed();
    os << r << ',' << fmt(range_r_max_entropy(cfg.num_qubits, r, opt,
                                              cfg.restarts))
       << '\n';
  }
  return os.str();
}

std::string run_entropy_growth(const ExperimentConfig& cfg) {
  std::ostringstream os;
  write_header(os, cfg);
  std::vector<int> snaps = cfg.snapshot_evals;
  if (snaps.empty())
    snaps = cfg.family == Family::CRX ? std::vector<int>{380, 550, 910}
                                      : std::vector<int>{20, 40, 80};
  const auto res = maximize_half_chain_entropy(
      cfg.ansatz_spec(), entropy_optimizer(cfg), cfg.restarts, snaps);
  os << "eval_index,half_chain_entropy\n";
  for (const auto& [idx, s] : res.trajectory)
    os << idx << ',' << fmt(s) << '\n';
  os << "snapshot_eval,cut,entropy\n";
  for (const auto& [idx, prof] : res.profiles)
    for (std::size_t x = 0; x < prof.values.size(); ++x)
      os << idx << ',' << x << ',' << fmt(prof.values[x]) << '\n';
  return os.str();
}

}  // namespace

std::string run_experiment(const ExperimentConfig& cfg,
                           std::vector<std::string>* errors) {
  switch (cfg.experiment) {
    case ExperimentKind::ExactSweep: return run_exact_sweep(cfg);
    case ExperimentKind::MfSweep: return run_mf_sweep(cfg);
    case ExperimentKind::VqeSweep: return run_vqe_sweep(cfg, errors);
    case ExperimentKind::GateOrders: return run_gate_orders(cfg, errors);
    case ExperimentKind::Layers: return run_layers(cfg, errors);
    case ExperimentKind::EntropyMax: return run_entropy_max(cfg);
    case ExperimentKind::EntropyRange: return run_entropy_range(cfg);
    case ExperimentKind::EntropyGrowth: return run_entropy_growth(cfg);
  }
  throw std::logic_error("run_experiment: unknown experiment");
}

}  // namespace xyvqe
