#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace qrabi {

using Objective = std::function<double(const std::vector<double>&)>;

struct OptimizerConfig {
  int n_hops = 50;                      // basin-hopping perturbation rounds per restart
  double hop_scale = 0.5;               // uniform step half-width, radians
  double metropolis_temperature = 1.0;  // acceptance temperature, objective units
  int local_max_iters = 200;
  double local_tolerance = 1e-9;        // gradient-norm stop
  int n_restarts = 4;                   // independent chains
  std::uint64_t master_seed = 0;
  double fd_step = 1e-6;                // central-difference step for gradients

  void validate() const {
    if (n_hops < 1 || local_max_iters < 1 || n_restarts < 1)
      throw std::invalid_argument("OptimizerConfig: counts must be >= 1");
    if (hop_scale <= 0.0 || metropolis_temperature <= 0.0 || local_tolerance <= 0.0 ||
        fd_step <= 0.0)
      throw std::invalid_argument("OptimizerConfig: scales must be > 0");
  }
};

// Raised when the objective stops returning finite values; carries the last
// iterate that still evaluated cleanly.
class NonFiniteObjectiveError : public std::runtime_error {
 public:
  NonFiniteObjectiveError(std::string what, std::vector<double> last)
      : std::runtime_error(std::move(what)), last_valid_point(std::move(last)) {}
  std::vector<double> last_valid_point;
};

struct LocalResult {
  std::vector<double> point;
  double value = 0.0;
  bool converged = false;  // gradient tolerance reached (or exact stationary point)
  int iterations = 0;
};

// Nonlinear conjugate gradient (Polak-Ribiere with restart on non-descent
// directions), Armijo backtracking line search, central-difference gradients.
LocalResult local_minimize(const Objective& objective, const std::vector<double>& x0,
                           const OptimizerConfig& cfg);

struct OptimizationOutcome {
  std::vector<double> best_point;
  double best_value = 0.0;
  int hops_accepted = 0;                  // Metropolis acceptances, all restarts
  bool converged = false;                 // from the local run that produced the best value
  std::vector<double> restart_best;       // best value per restart
  std::vector<double> best_curve;         // best-seen after each hop (elementwise over restarts)
  int failed_local_runs = 0;              // non-finite objective hops, skipped
};

// Basin hopping: perturb / locally minimize / Metropolis-accept, n_restarts
// independent chains. Restart 0 starts from x0, the others from uniform
// random angles in [0, 2pi). Fully deterministic given cfg.master_seed; the
// per-restart stream is derive_seed(master_seed, restart_index).
OptimizationOutcome basin_hop(const Objective& objective, const std::vector<double>& x0,
                              const OptimizerConfig& cfg);

}  // namespace qrabi
