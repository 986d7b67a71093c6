#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qrabi/discord.hpp"
#include "qrabi/model.hpp"

namespace qrabi {

// Four-stroke Otto cycle on the multiqubit Rabi working substance. The
// coupling g is held fixed; qubits and field stay in resonance, so the hot
// and cold strokes differ only in the common frequency. Temperatures are
// dimensionless in units of the reference frequency omega = omega_c.
struct CycleSpec {
  int qubit_count = 1;
  Basis basis = Basis::FullTensor;
  QubitConvention convention = QubitConvention::HalfSigmaZ;
  double omega_h = 2.0;
  double omega_c = 1.0;
  double tau_h = 0.0;
  double tau_c = 0.0;
  double coupling = 0.0;                    // g, fixed across the cycle
  std::optional<int> fock_cutoff_override;  // shared cutoff; default from default_fock_cutoff
  bool with_discords = false;               // compute stage states + their discords
  std::array<bool, 4> discord_stages{true, true, true, true};
  double population_floor = 1e-12;          // stage-state rank cut for the discord engine

  void validate() const;
};

struct OttoRecord {
  double q_hot = 0.0;
  double q_cold = 0.0;
  double work = 0.0;  // q_hot + q_cold
  int fock_cutoff = 0;
  bool crossing_warning = false;  // hot/cold level ordering ambiguous where it matters
  // stage data, filled when with_discords: 1 = hot thermal, 2 = populations
  // carried onto the cold spectrum, 3 = cold thermal, 4 = carried back
  std::array<DensityMatrix, 4> rho_stage;
  std::array<double, 4> discord_stage{};
  std::array<bool, 4> discord_warning{};
  double delta_q_14 = 0.0;  // discord_stage[0] - discord_stage[3]
  double delta_q_23 = 0.0;  // discord_stage[1] - discord_stage[2]
};

// One full cycle: thermalize at tau_h / adiabatically reshape to omega_c /
// thermalize at tau_c / reshape back. The adiabatic strokes carry populations
// across the two spectra in ascending energy order. Heats follow
//   Q_h = sum_n E_n^h (P_n(tau_h) - P_n(tau_c)),
//   Q_c = sum_n E_n^c (P_n(tau_c) - P_n(tau_h)),   W = Q_h + Q_c.
// FullTensor with homogeneous couplings and no stage discords runs on the
// total-spin sector decomposition, which keeps N = 4, 5 sweeps cheap.
OttoRecord run_cycle(const CycleSpec& spec, const OptimizerConfig& opt);

struct WorkScanRow {
  int qubit_count = 0;
  double coupling = 0.0;
  OttoRecord record;
  std::string error;  // empty on success
};

// Cartesian sweep over N x g; failed points carry their error and the scan
// continues. Rows come back grouped by N in grid order.
std::vector<WorkScanRow> work_scan(const CycleSpec& base, const std::vector<double>& g_grid,
                                   const std::vector<int>& qubit_counts,
                                   const OptimizerConfig& opt, int threads = 0);

}  // namespace qrabi
