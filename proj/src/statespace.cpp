#include "qrabi/statespace.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qrabi {

SpaceDescriptor build_space(int qubit_count, int fock_cutoff, Basis basis) {
  if (qubit_count < 0) throw std::invalid_argument("build_space: qubit_count must be >= 0");
  if (fock_cutoff < 2) throw std::invalid_argument("build_space: fock_cutoff must be >= 2");
  if (basis == Basis::DickeSymmetric && qubit_count < 1)
    throw std::invalid_argument("build_space: DickeSymmetric requires at least one qubit");
  SpaceDescriptor space;
  space.qubit_count = qubit_count;
  space.fock_cutoff = fock_cutoff;
  space.basis = basis;
  space.dim_qubits = basis == Basis::FullTensor ? (1 << qubit_count) : qubit_count + 1;
  space.dim_total = space.dim_qubits * fock_cutoff;
  return space;
}

Matrix kron(const Matrix& lhs, const Matrix& rhs) {
  Matrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i)
    for (Eigen::Index j = 0; j < lhs.cols(); ++j)
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
  return out;
}

RealMatrix angular_momentum_raising(int two_j) {
  if (two_j < 0) throw std::invalid_argument("angular_momentum_raising: two_j must be >= 0");
  const int d = two_j + 1;
  const double j = 0.5 * two_j;
  RealMatrix jp = RealMatrix::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) {
    const double m = i - j;  // J+|j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>
    jp(i + 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  return jp;
}

namespace {

Matrix fock_annihilation(int n_max) {
  Matrix a = Matrix::Zero(n_max, n_max);
  for (int n = 1; n < n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// single-qubit operator at slot `target`, identity elsewhere
Matrix embed_qubit_op(int n_qubits, int target, const Matrix& op) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < n_qubits; ++i)
    out = kron(out, i == target ? op : Matrix::Identity(2, 2));
  return out;
}

}  // namespace

OperatorSet build_operators(const SpaceDescriptor& space) {
  if (space.dim_total != space.dim_qubits * space.fock_cutoff)
    throw std::invalid_argument("build_operators: inconsistent descriptor dimensions");
  OperatorSet ops;
  ops.space = space;
  ops.identity_field = Matrix::Identity(space.fock_cutoff, space.fock_cutoff);
  ops.identity_qubits = Matrix::Identity(space.dim_qubits, space.dim_qubits);
  ops.annihilation = kron(fock_annihilation(space.fock_cutoff), ops.identity_qubits);

  if (space.basis == Basis::FullTensor) {
    Matrix sx(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sz << 1, 0, 0, -1;  // basis order |e>, |g> within each qubit slot
    ops.sigma_x.reserve(space.qubit_count);
    ops.sigma_z.reserve(space.qubit_count);
    for (int l = 0; l < space.qubit_count; ++l) {
      ops.sigma_x.push_back(kron(ops.identity_field, embed_qubit_op(space.qubit_count, l, sx)));
      ops.sigma_z.push_back(kron(ops.identity_field, embed_qubit_op(space.qubit_count, l, sz)));
    }
  } else {
    const int two_j = space.qubit_count;
    const RealMatrix jp = angular_momentum_raising(two_j);
    const RealMatrix jx = 0.5 * (jp + jp.transpose());
    RealVector m(two_j + 1);
    for (int i = 0; i <= two_j; ++i) m(i) = i - 0.5 * two_j;
    ops.j_x = kron(ops.identity_field, jx.cast<Complex>());
    ops.j_z = kron(ops.identity_field, Matrix(m.cast<Complex>().asDiagonal()));
  }
  return ops;
}

DensityMatrix pure_state(const Eigen::VectorXcd& psi, int dim_a, int dim_b) {
  if (psi.size() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw std::invalid_argument("pure_state: dimension mismatch");
  const double norm = psi.norm();
  if (norm <= 0.0) throw std::invalid_argument("pure_state: zero vector");
  const Eigen::VectorXcd v = psi / norm;
  return DensityMatrix{v * v.adjoint(), dim_a, dim_b};
}

DensityMatrix partial_trace(const DensityMatrix& rho, Keep keep) {
  const int da = rho.dim_a, db = rho.dim_b;
  if (rho.mat.rows() != rho.mat.cols() ||
      rho.mat.rows() != static_cast<Eigen::Index>(da) * db)
    throw std::invalid_argument("partial_trace: bipartition does not match matrix dimension");
  if (keep == Keep::A) {
    Matrix out = Matrix::Zero(da, da);
    for (int a = 0; a < da; ++a)
      for (int ap = 0; ap < da; ++ap)
        for (int b = 0; b < db; ++b)
          out(a, ap) += rho.mat(a * db + b, ap * db + b);
    return DensityMatrix{std::move(out), da, 1};
  }
  Matrix out = Matrix::Zero(db, db);
  for (int b = 0; b < db; ++b)
    for (int bp = 0; bp < db; ++bp)
      for (int a = 0; a < da; ++a)
        out(b, bp) += rho.mat(a * db + b, a * db + bp);
  return DensityMatrix{std::move(out), db, 1};
}

std::vector<SpinSector> spin_sectors(int qubit_count) {
  if (qubit_count < 1) throw std::invalid_argument("spin_sectors: need at least one qubit");
  // multiplicity of j: C(N, N/2-j) - C(N, N/2-j-1)
  auto choose = [](int n, int k) -> long long {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  std::vector<SpinSector> sectors;
  for (int two_j = qubit_count; two_j >= 0; two_j -= 2) {
    const int k = (qubit_count - two_j) / 2;
    const long long mult = choose(qubit_count, k) - choose(qubit_count, k - 1);
    sectors.push_back({two_j, static_cast<int>(mult)});
  }
  return sectors;
}

namespace {

// collective S_z and S_+ on the 2^N register, bit l = qubit l, bit value
// 0 = excited (sigma_z = +1) to match the FullTensor slot ordering
void collective_spin(int n, RealVector& sz_diag, RealMatrix& s_plus) {
  const int dim = 1 << n;
  sz_diag = RealVector::Zero(dim);
  s_plus = RealMatrix::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    int down = 0;
    for (int l = 0; l < n; ++l)
      if (s & (1 << (n - 1 - l))) ++down;
    sz_diag(s) = 0.5 * (n - 2 * down);
    for (int l = 0; l < n; ++l) {
      const int bit = 1 << (n - 1 - l);
      if (s & bit) s_plus(s ^ bit, s) = 1.0;  // raise qubit l: |g> -> |e>
    }
  }
}

}  // namespace

std::vector<RealMatrix> sector_isometries(int qubit_count, int two_j) {
  const int dim = 1 << qubit_count;
  const double j = 0.5 * two_j;
  RealVector sz;
  RealMatrix sp;
  collective_spin(qubit_count, sz, sp);
  const RealMatrix sm = sp.transpose();

  // highest-weight states: S_z = j and S_+ annihilates them
  std::vector<int> level;  // register states with S_z = j
  for (int s = 0; s < dim; ++s)
    if (std::abs(sz(s) - j) < 1e-9) level.push_back(s);
  RealMatrix basis = RealMatrix::Zero(dim, static_cast<int>(level.size()));
  for (std::size_t i = 0; i < level.size(); ++i) basis(level[i], static_cast<int>(i)) = 1.0;
  const RealMatrix restricted = sp * basis;
  Eigen::JacobiSVD<RealMatrix> svd(restricted, Eigen::ComputeFullV);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9) ++rank;
  const int mult = static_cast<int>(level.size()) - rank;
  if (mult <= 0)
    throw std::invalid_argument("sector_isometries: empty sector for this two_j");

  std::vector<RealMatrix> isometries;
  isometries.reserve(mult);
  for (int c = 0; c < mult; ++c) {
    Eigen::VectorXd top = basis * svd.matrixV().col(rank + c);
    top /= top.norm();
    // lower through the multiplet: |j,m-1> = S_- |j,m> / sqrt(j(j+1)-m(m-1))
    RealMatrix w(dim, two_j + 1);
    w.col(two_j) = top;
    double m = j;
    for (int i = two_j; i > 0; --i) {
      w.col(i - 1) = sm * w.col(i) / std::sqrt(j * (j + 1.0) - m * (m - 1.0));
      m -= 1.0;
    }
    isometries.push_back(std::move(w));
  }
  return isometries;
}

}  // namespace qrabi
