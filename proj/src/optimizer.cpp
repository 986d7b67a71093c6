#include "qrabi/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrabi/rng.hpp"

namespace qrabi {

namespace {

double checked_eval(const Objective& f, const std::vector<double>& x,
                    const std::vector<double>& last_valid) {
  const double v = f(x);
  if (!std::isfinite(v))
    throw NonFiniteObjectiveError("objective returned a non-finite value", last_valid);
  return v;
}

std::vector<double> fd_gradient(const Objective& f, const std::vector<double>& x, double h,
                                const std::vector<double>& last_valid) {
  std::vector<double> grad(x.size());
  std::vector<double> probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = checked_eval(f, probe, last_valid);
    probe[i] = x[i] - h;
    const double fm = checked_eval(f, probe, last_valid);
    probe[i] = x[i];
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

LocalResult local_minimize(const Objective& objective, const std::vector<double>& x0,
                           const OptimizerConfig& cfg) {
  cfg.validate();
  constexpr double kArmijoC = 1e-4;
  constexpr double kShrink = 0.5;
  constexpr double kMinStep = 1e-20;

  std::vector<double> x = x0;
  double fx = checked_eval(objective, x, x0);

  std::vector<double> grad = fd_gradient(objective, x, cfg.fd_step, x);
  std::vector<double> dir(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) dir[i] = -grad[i];

  LocalResult best{x, fx, false, 0};
  std::vector<double> trial(x.size());

  for (int iter = 0; iter < cfg.local_max_iters; ++iter) {
    best.iterations = iter;
    const double gnorm = std::sqrt(dot(grad, grad));
    if (gnorm < cfg.local_tolerance) {
      best.converged = true;
      break;
    }
    double slope = dot(grad, dir);
    if (slope >= 0.0) {  // non-descent: restart on steepest descent
      for (std::size_t i = 0; i < x.size(); ++i) dir[i] = -grad[i];
      slope = -gnorm * gnorm;
    }

    double step = 1.0;
    bool moved = false;
    while (step >= kMinStep) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + step * dir[i];
      const double ft = checked_eval(objective, trial, x);
      if (ft <= fx + kArmijoC * step * slope) {
        x = trial;
        fx = ft;
        moved = true;
        break;
      }
      step *= kShrink;
    }
    if (!moved) {  // no descent at machine-small steps: stationary enough
      best.converged = true;
      break;
    }
    if (fx < best.value) {
      best.point = x;
      best.value = fx;
    }

    std::vector<double> grad_new = fd_gradient(objective, x, cfg.fd_step, x);
    // Polak-Ribiere+, beta clipped at zero
    double num = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) num += grad_new[i] * (grad_new[i] - grad[i]);
    const double den = dot(grad, grad);
    const double beta = den > 0.0 ? std::max(0.0, num / den) : 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dir[i] = -grad_new[i] + beta * dir[i];
    grad = std::move(grad_new);
  }
  return best;
}

OptimizationOutcome basin_hop(const Objective& objective, const std::vector<double>& x0,
                              const OptimizerConfig& cfg) {
  cfg.validate();
  constexpr double kTwoPi = 6.283185307179586476925286766559;

  OptimizationOutcome out;
  out.best_value = std::numeric_limits<double>::infinity();
  out.restart_best.assign(cfg.n_restarts, std::numeric_limits<double>::infinity());
  out.best_curve.assign(cfg.n_hops + 1, std::numeric_limits<double>::infinity());

  bool any_result = false;
  for (int r = 0; r < cfg.n_restarts; ++r) {
    SplitMix64 rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(r)));

    std::vector<double> start = x0;
    if (r > 0)
      for (auto& v : start) v = rng.next_double(0.0, kTwoPi);

    LocalResult current;
    try {
      current = local_minimize(objective, start, cfg);
    } catch (const NonFiniteObjectiveError&) {
      ++out.failed_local_runs;
      continue;
    }
    double restart_best = current.value;
    LocalResult restart_best_result = current;

    std::vector<double> curve;
    curve.reserve(cfg.n_hops + 1);
    curve.push_back(restart_best);

    std::vector<double> proposal(current.point.size());
    for (int hop = 0; hop < cfg.n_hops; ++hop) {
      for (std::size_t i = 0; i < proposal.size(); ++i)
        proposal[i] = current.point[i] + rng.next_double(-cfg.hop_scale, cfg.hop_scale);
      LocalResult candidate;
      bool failed = false;
      try {
        candidate = local_minimize(objective, proposal, cfg);
      } catch (const NonFiniteObjectiveError&) {
        ++out.failed_local_runs;
        failed = true;
      }
      if (!failed) {
        if (candidate.value < restart_best) {
          restart_best = candidate.value;
          restart_best_result = candidate;
        }
        const double delta = candidate.value - current.value;
        if (delta <= 0.0 ||
            rng.next_double() < std::exp(-delta / cfg.metropolis_temperature)) {
          current = candidate;
          ++out.hops_accepted;
        }
      }
      curve.push_back(restart_best);
    }

    any_result = true;
    out.restart_best[r] = restart_best;
    for (std::size_t i = 0; i < curve.size(); ++i)
      out.best_curve[i] = std::min(out.best_curve[i], curve[i]);
    // strict < keeps the lowest restart index on ties
    if (restart_best < out.best_value) {
      out.best_value = restart_best;
      out.best_point = restart_best_result.point;
      out.converged = restart_best_result.converged;
    }
  }
  if (!any_result)
    throw NonFiniteObjectiveError("basin_hop: every restart failed on a non-finite objective", x0);
  return out;
}

}  // namespace qrabi
