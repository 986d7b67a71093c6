#include "qrabi/otto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qrabi/parallel.hpp"
#include "qrabi/rng.hpp"

namespace qrabi {

namespace {

constexpr double kCrossingTol = 1e-9;
constexpr double kPopulationMatchTol = 1e-12;

ModelParams stage_params(const CycleSpec& spec, double omega, int n_max) {
  return uniform_params(spec.qubit_count, n_max, spec.basis, omega, omega, spec.coupling,
                        spec.convention);
}

int shared_cutoff(const CycleSpec& spec) {
  if (spec.fock_cutoff_override) {
    if (*spec.fock_cutoff_override < 2)
      throw std::invalid_argument("CycleSpec: fock_cutoff_override must be >= 2");
    return *spec.fock_cutoff_override;
  }
  const double a_h = spec.qubit_count * spec.coupling / spec.omega_h;
  const double a_c = spec.qubit_count * spec.coupling / spec.omega_c;
  return std::max(default_fock_cutoff(a_h), default_fock_cutoff(a_c));
}

// multiplicity-expanded ascending energies of the full register space,
// assembled from the total-spin blocks
RealVector merged_sector_energies(const CycleSpec& spec, double omega, int n_max) {
  std::vector<double> all;
  for (const SpinSector& sector : spin_sectors(spec.qubit_count)) {
    Matrix h;
    if (sector.two_j == 0) {
      // spin singlet: the register drops out entirely
      const OperatorSet ops = build_operators(build_space(0, n_max, Basis::FullTensor));
      h = omega * (ops.annihilation.adjoint() * ops.annihilation);
    } else {
      // the collective builder on the j = two_j/2 multiplet
      h = build_hamiltonian(uniform_params(sector.two_j, n_max, Basis::DickeSymmetric, omega,
                                           omega, spec.coupling, spec.convention));
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h.real(), Eigen::EigenvaluesOnly);
    for (int copy = 0; copy < sector.multiplicity; ++copy)
      all.insert(all.end(), solver.eigenvalues().data(),
                 solver.eigenvalues().data() + solver.eigenvalues().size());
  }
  std::sort(all.begin(), all.end());
  return Eigen::Map<RealVector>(all.data(), static_cast<Eigen::Index>(all.size()));
}

// ordering is only genuinely ambiguous where a near-degenerate pair in one
// spectrum carries distinguishable populations from the other side
bool ambiguous_pairing(const RealVector& e, const RealVector& carried, double omega_ref) {
  for (Eigen::Index i = 0; i + 1 < e.size(); ++i)
    if (e(i + 1) - e(i) < kCrossingTol * omega_ref &&
        std::abs(carried(i + 1) - carried(i)) > kPopulationMatchTol)
      return true;
  return false;
}

DensityMatrix mixture_state(const Matrix& states, const RealVector& populations,
                            const ModelParams& params) {
  const int dim = static_cast<int>(states.rows());
  Matrix rho = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < populations.size(); ++i) {
    if (populations(i) <= 0.0) continue;
    rho.noalias() += populations(i) * (states.col(i) * states.col(i).adjoint());
  }
  return DensityMatrix{std::move(rho), params.space.fock_cutoff, params.space.dim_qubits};
}

}  // namespace

void CycleSpec::validate() const {
  if (qubit_count < 0) throw std::invalid_argument("CycleSpec: qubit_count must be >= 0");
  if (!(omega_h >= omega_c) || omega_c <= 0.0)
    throw std::invalid_argument("CycleSpec: need omega_h >= omega_c > 0");
  if (!(tau_h >= tau_c) || tau_c < 0.0)
    throw std::invalid_argument("CycleSpec: need tau_h >= tau_c >= 0");
  if (coupling < 0.0) throw std::invalid_argument("CycleSpec: coupling must be >= 0");
  if (basis == Basis::DickeSymmetric && qubit_count < 1)
    throw std::invalid_argument("CycleSpec: DickeSymmetric requires at least one qubit");
}

OttoRecord run_cycle(const CycleSpec& spec, const OptimizerConfig& opt) {
  spec.validate();
  const int n_max = shared_cutoff(spec);

  OttoRecord rec;
  rec.fock_cutoff = n_max;

  const bool sector_path = !spec.with_discords && spec.basis == Basis::FullTensor &&
                           spec.qubit_count >= 1;

  RealVector e_h, e_c;
  Spectrum spec_h, spec_c;
  if (sector_path) {
    e_h = merged_sector_energies(spec, spec.omega_h, n_max);
    e_c = merged_sector_energies(spec, spec.omega_c, n_max);
  } else {
    spec_h = solve(stage_params(spec, spec.omega_h, n_max));
    spec_c = solve(stage_params(spec, spec.omega_c, n_max));
    e_h = spec_h.energies;
    e_c = spec_c.energies;
  }

  const RealVector p_hot = thermal_populations(e_h, ThermalConfig{spec.tau_h, {}, 1e-9});
  const RealVector p_cold = thermal_populations(e_c, ThermalConfig{spec.tau_c, {}, 1e-9});

  rec.crossing_warning = ambiguous_pairing(e_h, p_cold, spec.omega_c) ||
                         ambiguous_pairing(e_c, p_hot, spec.omega_c);

  rec.q_hot = (e_h.array() * (p_hot - p_cold).array()).sum();
  rec.q_cold = (e_c.array() * (p_cold - p_hot).array()).sum();
  rec.work = rec.q_hot + rec.q_cold;

  for (auto& q : rec.discord_stage) q = std::numeric_limits<double>::quiet_NaN();
  if (spec.with_discords) {
    const ModelParams params_h = stage_params(spec, spec.omega_h, n_max);
    const ModelParams params_c = stage_params(spec, spec.omega_c, n_max);
    rec.rho_stage[0] = mixture_state(spec_h.states, p_hot, params_h);
    rec.rho_stage[1] = mixture_state(spec_c.states, p_hot, params_c);
    rec.rho_stage[2] = mixture_state(spec_c.states, p_cold, params_c);
    rec.rho_stage[3] = mixture_state(spec_h.states, p_cold, params_h);

    const std::array<const Matrix*, 4> vecs{&spec_h.states, &spec_c.states, &spec_c.states,
                                            &spec_h.states};
    const std::array<const RealVector*, 4> pops{&p_hot, &p_hot, &p_cold, &p_cold};
    const std::array<const ModelParams*, 4> par{&params_h, &params_c, &params_c, &params_h};
    for (int s = 0; s < 4; ++s) {
      if (!spec.discord_stages[s]) continue;
      const ConditionalEntropyEngine engine(*pops[s], *vecs[s], par[s]->space.fock_cutoff,
                                            par[s]->space.dim_qubits, spec.population_floor);
      const DensityMatrix& rho = rec.rho_stage[s];
      const double s_ab = engine.state_entropy();
      const double s_b = von_neumann_entropy(partial_trace(rho, Keep::B));
      OptimizerConfig stage_opt = opt;
      stage_opt.master_seed = derive_seed(opt.master_seed, 100 + static_cast<std::uint64_t>(s));
      const std::vector<double> x0(frame_angle_count(rho.dim_b), 0.0);
      const OptimizationOutcome outcome = basin_hop(
          [&engine](const std::vector<double>& angles) { return engine(angles); }, x0, stage_opt);
      const double raw = s_b - s_ab + outcome.best_value;
      rec.discord_stage[s] = (raw < 0.0 && raw > -1e-9) ? 0.0 : raw;
      rec.discord_warning[s] = !outcome.converged;
    }
    rec.delta_q_14 = rec.discord_stage[0] - rec.discord_stage[3];
    rec.delta_q_23 = rec.discord_stage[1] - rec.discord_stage[2];
  }
  return rec;
}

std::vector<WorkScanRow> work_scan(const CycleSpec& base, const std::vector<double>& g_grid,
                                   const std::vector<int>& qubit_counts,
                                   const OptimizerConfig& opt, int threads) {
  if (!std::is_sorted(g_grid.begin(), g_grid.end()))
    throw std::invalid_argument("work_scan: g grid must be sorted ascending");
  std::vector<WorkScanRow> rows(g_grid.size() * qubit_counts.size());
  const std::size_t per_n = g_grid.size();
  parallel_for(rows.size(), threads, [&](std::size_t idx) {
    const int n = qubit_counts[idx / per_n];
    const double g = g_grid[idx % per_n];
    WorkScanRow& row = rows[idx];
    row.qubit_count = n;
    row.coupling = g;
    try {
      CycleSpec spec = base;
      spec.qubit_count = n;
      spec.coupling = g;
      OptimizerConfig point_opt = opt;
      point_opt.master_seed = derive_seed(opt.master_seed, idx);
      row.record = run_cycle(spec, point_opt);
    } catch (const std::exception& err) {
      row.error = err.what();
    }
  });
  return rows;
}

}  // namespace qrabi
