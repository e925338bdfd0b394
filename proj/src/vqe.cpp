#include "xyvqe/vqe.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <numbers>

namespace xyvqe {

OptimizerConfig effective_optimizer(const VqeConfig& cfg) {
  OptimizerConfig opt = cfg.optimizer;
  opt.seed = cfg.seed;
  if (cfg.auto_method) {
    if (cfg.mode == EnergyMode::SAMPLED) {
      opt.method = Method::SPSA;
      if (opt.noise_floor == 0) {
        // Upper bound on the propagated standard error of one estimate.
        double coeff_sq = 0;
        for (const auto& t : term_list(cfg.model))
          coeff_sq += t.coefficient * t.coefficient;
        opt.noise_floor =
            std::sqrt(coeff_sq / static_cast<double>(cfg.shots_per_setting));
      }
      // Budget-independent initial step of ~0.02 rad: the first-iteration
      // gain is spsa_a / (1 + A)^0.602 with A = 0.1 * max_evals.
      opt.spsa_a = 0.02 * std::pow(1.0 + 0.1 * opt.max_evals, 0.602);
    } else {
      opt.method = Method::NELDER_MEAD;
    }
  }
  return opt;
}

namespace {

// Fidelity against the exact ground state; maximum over the two degenerate
// Dicke sectors at a critical field.
double reference_fidelity(const StateVector& psi, const GroundState& gs,
                          const XYModel& m) {
  double f = fidelity(psi, gs.state);
  if (gs.degenerate && gs.n_alt >= 0)
    f = std::max(
        f, fidelity(psi, dicke_state(m.num_sites, m.num_sites - gs.n_alt)));
  return f;
}

}  // namespace

VqeResult run(const VqeConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const Circuit circ = build(cfg.ansatz);
  const OptimizerConfig opt = effective_optimizer(cfg);

  ObjectiveFactory factory = [&](int restart) -> Objective {
    if (cfg.mode == EnergyMode::EXACT)
      return [&](std::span<const double> p) {
        return energy_exact(circ, p, cfg.model);
      };
    auto rng = std::make_shared<Rng>(
        Rng(cfg.seed).spawn(0xe5a17ed + static_cast<std::uint64_t>(restart)));
    return [&, rng](std::span<const double> p) {
      return energy_sampled(circ, p, cfg.model, cfg.shots_per_setting, *rng,
                            cfg.per_term_measurement)
          .value;
    };
  };

  // Collect per-restart summaries alongside the best run.
  std::vector<RestartSummary> summaries;
  OptRun best;
  bool have_best = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = Rng(opt.seed).spawn(static_cast<std::uint64_t>(r));
    std::vector<double> x0(static_cast<std::size_t>(circ.num_params));
    for (double& x : x0) x = rng.uniform(-std::numbers::pi, std::numbers::pi);
    OptimizerConfig sub = opt;
    sub.seed = rng.next_u64();
    OptRun run_r = minimize(factory(r), std::move(x0), sub);
    run_r.restart_index = r;
    summaries.push_back(
        {r, run_r.best_value, run_r.evals_used, run_r.converged});
    if (!have_best || run_r.best_value < best.best_value) {
      best = std::move(run_r);
      have_best = true;
    }
  }

  VqeResult res;
  res.restarts_summary = std::move(summaries);
  res.history = best.history;
  for (const auto& s : res.restarts_summary) res.evals_used += s.evals_used;
  res.params = best.best_params;
  for (double& p : res.params) p = wrap_angle(p);

  // Final state and fidelity always come from the exact statevector.
  const StateVector psi = run_circuit(circ, best.best_params);
  const double e_final = (cfg.mode == EnergyMode::EXACT)
                             ? best.best_value
                             : energy_exact(circ, best.best_params, cfg.model);
  res.energy_per_site = e_final / cfg.model.num_sites;
  const GroundState gs =
      exact_ground_state(cfg.model.num_sites, cfg.model.coupling,
                         cfg.model.field);
  res.fidelity_vs_exact = reference_fidelity(psi, gs, cfg.model);
  res.degenerate_reference = gs.degenerate;
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

std::vector<VqeResult> sweep(const VqeConfig& cfg,
                             const std::vector<double>& h_values, int jobs) {
  if (h_values.empty())
    throw std::invalid_argument("sweep: empty field list");
  std::vector<VqeResult> results(h_values.size());
  auto run_point = [&](std::size_t i) {
    VqeConfig point = cfg;
    point.model.field = h_values[i];
    point.seed = Rng(cfg.seed).spawn(i).seed();
    results[i] = run(point);
  };
  if (jobs <= 1) {
    for (std::size_t i = 0; i < h_values.size(); ++i) run_point(i);
  } else {
    std::vector<std::future<void>> batch;
    for (std::size_t i = 0; i < h_values.size(); ++i) {
      batch.push_back(std::async(std::launch::async, run_point, i));
      if (static_cast<int>(batch.size()) == jobs) {
        for (auto& f : batch) f.get();
        batch.clear();
      }
    }
    for (auto& f : batch) f.get();
  }
  return results;
}

}  // namespace xyvqe
