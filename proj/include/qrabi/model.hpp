#pragma once

#include <optional>
#include <vector>

#include "qrabi/statespace.hpp"

namespace qrabi {

// Eq.-level z-term convention: HalfSigmaZ puts the conventional 1/2 in front
// of omega_q sigma_z (qubit gap = omega_q, resonance at omega_q = omega_r);
// FullSigmaZ keeps the bare omega_q sigma_z term (gap = 2 omega_q).
enum class QubitConvention { HalfSigmaZ, FullSigmaZ };

struct ModelParams {
  SpaceDescriptor space;
  double omega_r = 1.0;               // field frequency, units of the reference omega
  std::vector<double> omega_q;        // per-qubit frequency
  std::vector<double> coupling;       // per-qubit g >= 0
  QubitConvention convention = QubitConvention::HalfSigmaZ;

  bool homogeneous() const;
  void validate() const;
};

// All qubits identical; the common case throughout.
ModelParams uniform_params(int qubit_count, int fock_cutoff, Basis basis, double omega_r,
                           double omega_q, double coupling,
                           QubitConvention convention = QubitConvention::HalfSigmaZ);

// H = omega_r a+a + sum_l c*omega_q,l sigma_z,l + sum_l g_l sigma_x,l (a + a+),
// hbar = 1, c per QubitConvention. DickeSymmetric uses the collective
// operators (sum sigma -> 2J) and requires homogeneous omega_q and g.
Matrix build_hamiltonian(const ModelParams& params);

// Diagonal unitary exp(-i pi [sum_l (sigma_z,l + 1)/2 + a+a]); entries +-1.
Matrix parity_operator(const SpaceDescriptor& space);

struct Spectrum {
  RealVector energies;                  // ascending
  Matrix states;                        // column eigenvectors
  std::optional<ModelParams> params;    // set when produced via solve()
};

// Dense Hermitian eigendecomposition (ascending). Inputs that are real up to
// 1e-14 take the real-symmetric path, which is several times faster.
Spectrum eigendecompose(const Matrix& hamiltonian);

// build_hamiltonian + eigendecompose with the params snapshot attached
Spectrum solve(const ModelParams& params);

struct ThermalConfig {
  double tau = 0.0;                       // k_B T / (hbar omega_ref), >= 0
  std::optional<int> level_cutoff;        // keep only the lowest m eigenstates
  double ground_degeneracy_tol = 1e-9;    // tau = 0: levels within this of E0 mix equally
};

// Boltzmann weights over `energies` (shifted by the ground energy before
// exponentiation). tau = 0 returns the equal mixture over the (near-)
// degenerate ground levels.
RealVector thermal_populations(const RealVector& energies, const ThermalConfig& cfg);

// Gibbs state sum_j P_j |e_j><e_j| tagged with the (field, qubits) bipartition
// when the spectrum carries params.
DensityMatrix thermal_state(const Spectrum& spectrum, const ThermalConfig& cfg);

// Starting Fock cutoff for coupling strength alpha = N*max(g)/omega_r: the
// displaced-oscillator photon number alpha^2 plus a ten-sigma Poisson margin.
int default_fock_cutoff(double alpha);

// Smallest tested cutoff (starting at default_fock_cutoff) whose lowest
// n_levels eigenvalues move by less than tol when the cutoff is doubled.
// Throws after four doublings without convergence.
int converge_cutoff(const ModelParams& params, int n_levels, double tol);

}  // namespace qrabi
