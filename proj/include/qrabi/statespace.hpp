#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qrabi {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Qubit-register representation.
//   FullTensor     : all 2^N configurations, one sigma pair per qubit.
//   DickeSymmetric : maximal angular-momentum multiplet j = N/2 only
//                    (dimension N+1); lower-j multiplets are excluded.
enum class Basis { FullTensor, DickeSymmetric };

// Truncated field (x) qubit product space. The field factor always comes
// first: a composite index reads i = n * dim_qubits + q.
struct SpaceDescriptor {
  int qubit_count = 0;   // N >= 0
  int fock_cutoff = 0;   // photon states 0 .. n_max-1
  Basis basis = Basis::FullTensor;
  int dim_qubits = 1;    // 2^N or N+1
  int dim_total = 0;     // dim_qubits * fock_cutoff
};

SpaceDescriptor build_space(int qubit_count, int fock_cutoff, Basis basis);

// Elementary operators embedded in the full space (see SpaceDescriptor for
// the factor ordering). FullTensor fills sigma_x/sigma_z per qubit;
// DickeSymmetric fills the collective j_x/j_z instead.
struct OperatorSet {
  SpaceDescriptor space;
  Matrix annihilation;                // a, truncated at the top Fock level
  std::vector<Matrix> sigma_x;        // per qubit (FullTensor)
  std::vector<Matrix> sigma_z;
  Matrix j_x;                         // collective (DickeSymmetric)
  Matrix j_z;
  Matrix identity_field;
  Matrix identity_qubits;
};

OperatorSet build_operators(const SpaceDescriptor& space);

// Angular-momentum raising operator on the |j,m> multiplet, m ascending,
// so J_z = diag(-j..j). two_j = 2j keeps half-integer j exact.
RealMatrix angular_momentum_raising(int two_j);

// Hermitian, PSD, unit-trace matrix tagged with its bipartition (A first).
struct DensityMatrix {
  Matrix mat;
  int dim_a = 1;
  int dim_b = 1;

  double trace_real() const { return mat.trace().real(); }
  // max deviation from Hermiticity / unit trace; tests gate on this
  double hermiticity_error() const { return (mat - mat.adjoint()).cwiseAbs().maxCoeff(); }
};

DensityMatrix pure_state(const Eigen::VectorXcd& psi, int dim_a, int dim_b);

enum class Keep { A, B };

DensityMatrix partial_trace(const DensityMatrix& rho, Keep keep);

// Kronecker product, row index of the left factor most significant.
Matrix kron(const Matrix& lhs, const Matrix& rhs);

// ---- total-spin sectors of N spin-1/2 --------------------------------------
//
// With homogeneous couplings the register Hamiltonian only involves the
// collective spin, so the 2^N space splits into multiplets j = N/2, N/2-1, ...
// each repeated `multiplicity` times with identical dynamics. Enumerating the
// distinct j blocks turns one 2^N * n_max diagonalization into a handful of
// (2j+1) * n_max ones.

struct SpinSector {
  int two_j = 0;
  int multiplicity = 0;
};

// Distinct sectors, two_j descending; sum over multiplicity*(two_j+1) = 2^N.
std::vector<SpinSector> spin_sectors(int qubit_count);

// Isometries embedding each multiplet copy into the 2^N register space.
// Entry [c] is the 2^N x (two_j+1) matrix whose columns are |j, m, copy c>
// with m ascending; real because the construction only uses ladder operators.
std::vector<RealMatrix> sector_isometries(int qubit_count, int two_j);

}  // namespace qrabi
