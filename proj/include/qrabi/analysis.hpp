#pragma once

#include <string>
#include <vector>

#include "qrabi/discord.hpp"
#include "qrabi/model.hpp"

namespace qrabi {

// FieldVsQubits: discord of the full state, measurement on the register.
// OneVsRest: trace out the field first and split the register into
// (N-1 qubits) x (last qubit), measuring the single qubit. OneVsRest needs
// the FullTensor basis (the symmetric subspace has no per-qubit factors);
// the thermal state itself is assembled exactly from the total-spin sectors.
enum class Partition { FieldVsQubits, OneVsRest };

struct ScanPoint {
  double g_over_omega = 0.0;
  double discord = 0.0;
  bool optimizer_warning = false;
  std::vector<double> optimal_angles;
  std::string error;  // empty on success
};

struct ScanRecord {
  int qubit_count = 0;
  double tau = 0.0;
  Partition partition = Partition::FieldVsQubits;
  Basis basis = Basis::FullTensor;
  int fock_cutoff = 0;            // largest cutoff used across the grid
  std::uint64_t master_seed = 0;
  std::vector<ScanPoint> points;  // grid order

  std::vector<double> g_values() const;
  std::vector<double> discord_values() const;
};

struct ScanSettings {
  std::optional<int> fock_cutoff_override;  // per-point default_fock_cutoff otherwise
  std::optional<int> level_cutoff;          // thermal levels kept
  int threads = 0;                          // 0 = default_thread_count()
};

// Thermal-state discord along a strictly increasing coupling grid, with
// omega_r = omega_q = 1 (couplings are g/omega). Deterministic for a given
// opt.master_seed; per-point optimizer streams are derive_seed(seed, index).
ScanRecord discord_scan(const ModelParams& base, double tau, const std::vector<double>& g_grid,
                        Partition partition, const OptimizerConfig& opt,
                        const ScanSettings& settings = {});

// Exact reduced register state Tr_field[rho_th] for homogeneous FullTensor
// params, assembled from the total-spin sector decomposition (all multiplets,
// dark states included).
DensityMatrix qubit_thermal_state(const ModelParams& params, const ThermalConfig& cfg);

struct Extremum {
  double location = 0.0;
  double value = 0.0;
  bool boundary = false;    // extremum on the grid edge, not refined
  bool degenerate = false;  // flat record, midpoint reported
};

enum class ExtremumKind { Max, Min };

// Grid arg-extremum refined by the parabola through the three surrounding
// samples. Needs at least three points.
Extremum locate_extremum(const std::vector<double>& x, const std::vector<double>& y,
                         ExtremumKind kind);

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;  // on log-log residuals; 1 when SS_tot = 0
  int n_points = 0;
};

// Least squares of log y on log x; all inputs must be strictly positive.
PowerLawFit power_law_fit(const std::vector<double>& x, const std::vector<double>& y);

// convenience grids
std::vector<double> linear_grid(double lo, double hi, int count);
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace qrabi
