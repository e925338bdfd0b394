#include "xyvqe/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace xyvqe {

double wrap_angle(double x) {
  using std::numbers::pi;
  double w = std::fmod(x + pi, 2 * pi);
  if (w <= 0) w += 2 * pi;
  return w - pi;
}

namespace {

struct StopSearch {};

// Counts evaluations, tracks the incumbent and stops the search when the
// budget runs out or a noisy objective stalls below the noise floor.
class EvalTracker {
 public:
  EvalTracker(const Objective& f, const OptimizerConfig& cfg)
      : f_(f), cfg_(cfg) {}

  double operator()(std::span<const double> x) {
    if (run_.evals_used >= cfg_.max_evals) throw StopSearch{};
    if (cfg_.noise_floor > 0 &&
        run_.evals_used - last_noise_improvement_ >= 50) {
      run_.converged = true;
      throw StopSearch{};
    }
    double v;
    if (cfg_.bounds) {
      clamped_.assign(x.begin(), x.end());
      for (std::size_t i = 0; i < clamped_.size(); ++i)
        clamped_[i] = std::clamp(clamped_[i], cfg_.bounds->lower[i],
                                 cfg_.bounds->upper[i]);
      v = f_(clamped_);
    } else {
      v = f_(x);
    }
    if (!std::isfinite(v))
      throw std::runtime_error("minimize: objective returned non-finite value");
    const int idx = run_.evals_used++;
    if (run_.best_params.empty() || v < run_.best_value) {
      if (cfg_.noise_floor > 0 &&
          (run_.best_params.empty() || run_.best_value - v >= cfg_.noise_floor))
        last_noise_improvement_ = idx;
      run_.best_value = v;
      if (cfg_.bounds)
        run_.best_params = clamped_;
      else
        run_.best_params.assign(x.begin(), x.end());
      run_.history.emplace_back(idx, v);
    }
    return v;
  }

  OptRun& run() { return run_; }
  int evals_left() const { return cfg_.max_evals - run_.evals_used; }

 private:
  const Objective& f_;
  const OptimizerConfig& cfg_;
  OptRun run_;
  std::vector<double> clamped_;
  int last_noise_improvement_ = 0;
};

// One Nelder-Mead pass from x0 with the given initial simplex step.
// Returns the best vertex; true when the simplex met the tolerances.
bool nelder_mead_pass(EvalTracker& eval, std::vector<double>& x0, double step,
                      const OptimizerConfig& cfg) {
  const int n = static_cast<int>(x0.size());
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (int i = 1; i <= n; ++i) pts[i][i - 1] += step;
  for (int i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

  std::vector<int> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  while (true) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fv[a] < fv[b]; });
    const int lo = order[0], hi = order[n], second_hi = order[n - 1];

    double fspread = fv[hi] - fv[lo];
    double xspread = 0;
    for (int i = 0; i < n; ++i)
      xspread = std::max(xspread, std::abs(pts[hi][i] - pts[lo][i]));
    if (fspread <= cfg.tolerance_f && xspread <= cfg.tolerance_x) {
      x0 = pts[lo];
      return true;
    }

    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int k = 0; k <= n; ++k)
        if (k != hi) s += pts[k][i];
      centroid[i] = s / n;
    }
    for (int i = 0; i < n; ++i) xr[i] = centroid[i] + (centroid[i] - pts[hi][i]);
    const double fr = eval(xr);
    if (fr < fv[lo]) {
      for (int i = 0; i < n; ++i)
        xe[i] = centroid[i] + 2 * (centroid[i] - pts[hi][i]);
      const double fe = eval(xe);
      if (fe < fr) { pts[hi] = xe; fv[hi] = fe; }
      else { pts[hi] = xr; fv[hi] = fr; }
    } else if (fr < fv[second_hi]) {
      pts[hi] = xr;
      fv[hi] = fr;
    } else {
      const bool outside = fr < fv[hi];
      if (outside)
        for (int i = 0; i < n; ++i)
          xc[i] = centroid[i] + 0.5 * (xr[i] - centroid[i]);
      else
        for (int i = 0; i < n; ++i)
          xc[i] = centroid[i] + 0.5 * (pts[hi][i] - centroid[i]);
      const double fc = eval(xc);
      if (fc < std::min(fr, fv[hi])) {
        pts[hi] = xc;
        fv[hi] = fc;
      } else {
        for (int k = 0; k <= n; ++k) {
          if (k == lo) continue;
          for (int i = 0; i < n; ++i)
            pts[k][i] = pts[lo][i] + 0.5 * (pts[k][i] - pts[lo][i]);
          fv[k] = eval(pts[k]);
        }
      }
    }
  }
}

void run_nelder_mead(EvalTracker& eval, std::vector<double> x0,
                     const OptimizerConfig& cfg) {
  // Restarted simplex: rebuild around the incumbent with a smaller step
  // until an extra pass stops paying off.
  double step = 0.5;
  double prev = std::numeric_limits<double>::infinity();
  while (eval.evals_left() > 0) {
    nelder_mead_pass(eval, x0, step, cfg);
    const double best = eval.run().best_value;
    if (prev - best <= cfg.tolerance_f) {
      eval.run().converged = true;
      return;
    }
    prev = best;
    x0 = eval.run().best_params;
    step = std::max(step * 0.5, 1e-3);
  }
}

// Golden-section line minimization along dir from x. Updates x in place
// and returns the objective value there.
double line_minimize(EvalTracker& eval, std::vector<double>& x,
                     const std::vector<double>& dir, double fx) {
  const int n = static_cast<int>(x.size());
  std::vector<double> probe(n);
  auto g = [&](double t) {
    for (int i = 0; i < n; ++i) probe[i] = x[i] + t * dir[i];
    return eval(probe);
  };

  // Bracket a minimum around t = 0 by golden-ratio expansion.
  constexpr double golden = 1.6180339887498949;
  double a = 0, fa = fx;
  double b = 1.0, fb = g(b);
  double lo, hi;
  if (fb > fa) {
    const double fm = g(-1.0);
    if (fm > fa) {
      lo = -1.0;
      hi = 1.0;
    } else {
      a = 0; fa = fx; b = -1.0; fb = fm;
      double c = b + golden * (b - a), fc = g(c);
      int guard = 0;
      while (fc < fb && ++guard < 100) {
        a = b; b = c; fb = fc;
        c = b + golden * (b - a);
        fc = g(c);
      }
      lo = std::min(a, c);
      hi = std::max(a, c);
    }
  } else {
    double c = b + golden * (b - a), fc = g(c);
    int guard = 0;
    while (fc < fb && ++guard < 100) {
      a = b; b = c; fb = fc;
      c = b + golden * (b - a);
      fc = g(c);
    }
    lo = std::min(a, c);
    hi = std::max(a, c);
  }

  constexpr double invphi = 0.6180339887498949;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = g(x1), f2 = g(x2);
  while (hi - lo > 1e-6) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = g(x2);
    }
  }
  const double t = f1 < f2 ? x1 : x2;
  const double ft = std::min(f1, f2);
  if (ft >= fx) return fx;  // no progress along this direction
  for (int i = 0; i < n; ++i) x[i] += t * dir[i];
  return ft;
}

void run_powell(EvalTracker& eval, std::vector<double> x,
                const OptimizerConfig& cfg) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> dirs(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) dirs[i][i] = 1.0;

  double fx = eval(x);
  while (eval.evals_left() > 0) {
    const std::vector<double> x_start = x;
    const double f_start = fx;
    int biggest = 0;
    double biggest_drop = 0;
    for (int d = 0; d < n; ++d) {
      const double before = fx;
      fx = line_minimize(eval, x, dirs[d], fx);
      if (before - fx > biggest_drop) {
        biggest_drop = before - fx;
        biggest = d;
      }
    }
    if (f_start - fx <= cfg.tolerance_f) {
      eval.run().converged = true;
      return;
    }
    std::vector<double> new_dir(n);
    double norm = 0;
    for (int i = 0; i < n; ++i) {
      new_dir[i] = x[i] - x_start[i];
      norm += new_dir[i] * new_dir[i];
    }
    if (norm > cfg.tolerance_x * cfg.tolerance_x) {
      fx = line_minimize(eval, x, new_dir, fx);
      dirs[biggest] = new_dir;
    }
  }
}

void run_spsa(EvalTracker& eval, std::vector<double> x,
              const OptimizerConfig& cfg) {
  const int n = static_cast<int>(x.size());
  Rng rng = Rng(cfg.seed).spawn(0x5b5a);
  const double big_a = 0.1 * cfg.max_evals;
  std::vector<double> xp(n), xm(n);
  std::vector<int> delta(n);
  for (int k = 0; eval.evals_left() >= 2; ++k) {
    const double ak = cfg.spsa_a / std::pow(k + 1 + big_a, 0.602);
    const double ck = cfg.spsa_c / std::pow(k + 1, 0.101);
    for (int i = 0; i < n; ++i) delta[i] = rng.rademacher();
    for (int i = 0; i < n; ++i) {
      xp[i] = x[i] + ck * delta[i];
      xm[i] = x[i] - ck * delta[i];
    }
    const double yp = eval(xp);
    const double ym = eval(xm);
    for (int i = 0; i < n; ++i) x[i] -= ak * (yp - ym) / (2 * ck * delta[i]);
  }
  if (eval.evals_left() > 0) eval(x);
}

}  // namespace

OptRun minimize(const Objective& f, std::vector<double> x0,
                const OptimizerConfig& cfg) {
  if (cfg.max_evals < 1)
    throw std::invalid_argument("minimize: max_evals must be >= 1");
  if (cfg.tolerance_f <= 0 || cfg.tolerance_x <= 0)
    throw std::invalid_argument("minimize: tolerances must be positive");
  if (cfg.bounds && (cfg.bounds->lower.size() != x0.size() ||
                     cfg.bounds->upper.size() != x0.size()))
    throw std::invalid_argument("minimize: bounds dimension mismatch");
  EvalTracker eval(f, cfg);
  try {
    switch (cfg.method) {
      case Method::NELDER_MEAD: run_nelder_mead(eval, std::move(x0), cfg); break;
      case Method::POWELL: run_powell(eval, std::move(x0), cfg); break;
      case Method::SPSA: run_spsa(eval, std::move(x0), cfg); break;
    }
  } catch (const StopSearch&) {
  }
  return std::move(eval.run());
}

OptRun multi_start(const ObjectiveFactory& factory, int dim, int restarts,
                   const OptimizerConfig& cfg) {
  if (restarts < 1)
    throw std::invalid_argument("multi_start: restarts must be >= 1");
  using std::numbers::pi;
  OptRun best;
  bool have_best = false;
  for (int r = 0; r < restarts; ++r) {
    Rng rng = Rng(cfg.seed).spawn(static_cast<std::uint64_t>(r));
    std::vector<double> x0(dim);
    for (double& x : x0) x = rng.uniform(-pi, pi);
    OptimizerConfig sub = cfg;
    sub.seed = rng.next_u64();
    OptRun run = minimize(factory(r), std::move(x0), sub);
    run.restart_index = r;
    if (!have_best || run.best_value < best.best_value) {
      best = std::move(run);
      have_best = true;
    }
  }
  return best;
}

OptRun multi_start(const Objective& f, int dim, int restarts,
                   const OptimizerConfig& cfg) {
  return multi_start([&](int) { return f; }, dim, restarts, cfg);
}

}  // namespace xyvqe
