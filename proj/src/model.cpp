#include "qrabi/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrabi {

bool ModelParams::homogeneous() const {
  auto all_equal = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  if (omega_q.empty()) return true;
  return all_equal(omega_q) && all_equal(coupling);
}

void ModelParams::validate() const {
  if (omega_r <= 0.0) throw std::invalid_argument("ModelParams: omega_r must be > 0");
  if (static_cast<int>(omega_q.size()) != space.qubit_count ||
      static_cast<int>(coupling.size()) != space.qubit_count)
    throw std::invalid_argument("ModelParams: per-qubit arrays must have length N");
  for (double w : omega_q)
    if (w <= 0.0) throw std::invalid_argument("ModelParams: omega_q must be > 0");
  for (double g : coupling)
    if (g < 0.0) throw std::invalid_argument("ModelParams: coupling must be >= 0");
  if (space.basis == Basis::DickeSymmetric && !homogeneous())
    throw std::invalid_argument("ModelParams: DickeSymmetric requires homogeneous omega_q and g");
}

ModelParams uniform_params(int qubit_count, int fock_cutoff, Basis basis, double omega_r,
                           double omega_q, double coupling, QubitConvention convention) {
  ModelParams p;
  p.space = build_space(qubit_count, fock_cutoff, basis);
  p.omega_r = omega_r;
  p.omega_q.assign(qubit_count, omega_q);
  p.coupling.assign(qubit_count, coupling);
  p.convention = convention;
  p.validate();
  return p;
}

Matrix build_hamiltonian(const ModelParams& params) {
  params.validate();
  const double c = params.convention == QubitConvention::HalfSigmaZ ? 0.5 : 1.0;
  const OperatorSet ops = build_operators(params.space);
  const Matrix x_field = ops.annihilation + ops.annihilation.adjoint();
  Matrix h = params.omega_r * (ops.annihilation.adjoint() * ops.annihilation);
  if (params.space.basis == Basis::FullTensor) {
    for (int l = 0; l < params.space.qubit_count; ++l) {
      h += c * params.omega_q[l] * ops.sigma_z[l];
      h += params.coupling[l] * (ops.sigma_x[l] * x_field);
    }
  } else {
    // collective form: sum_l sigma_z -> 2 J_z, sum_l g sigma_x -> 2 g J_x
    if (params.space.qubit_count > 0) {
      h += c * params.omega_q.front() * 2.0 * ops.j_z;
      h += params.coupling.front() * 2.0 * (ops.j_x * x_field);
    }
  }
  return h;
}

Matrix parity_operator(const SpaceDescriptor& space) {
  // exponent counts a+a plus the number of excited qubits, both diagonal here
  Eigen::VectorXcd diag(space.dim_total);
  for (int n = 0; n < space.fock_cutoff; ++n) {
    for (int q = 0; q < space.dim_qubits; ++q) {
      int excited = 0;
      if (space.basis == Basis::FullTensor) {
        for (int l = 0; l < space.qubit_count; ++l)
          if (!(q & (1 << (space.qubit_count - 1 - l)))) ++excited;  // bit 0 = |e>
      } else {
        excited = q;  // |j,m>: excited count = m + j = row index
      }
      diag(n * space.dim_qubits + q) = ((n + excited) % 2 == 0) ? 1.0 : -1.0;
    }
  }
  return diag.asDiagonal();
}

Spectrum eigendecompose(const Matrix& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols())
    throw std::invalid_argument("eigendecompose: matrix must be square");
  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("eigendecompose: input is not Hermitian");

  Spectrum out;
  if (hamiltonian.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(hamiltonian.real());
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("eigendecompose: real solver failed");
    out.energies = solver.eigenvalues();
    out.states = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("eigendecompose: complex solver failed");
    out.energies = solver.eigenvalues();
    out.states = solver.eigenvectors();
  }
  return out;
}

Spectrum solve(const ModelParams& params) {
  Spectrum spec = eigendecompose(build_hamiltonian(params));
  spec.params = params;
  return spec;
}

RealVector thermal_populations(const RealVector& energies, const ThermalConfig& cfg) {
  if (cfg.tau < 0.0) throw std::invalid_argument("thermal_populations: negative temperature");
  const int total = static_cast<int>(energies.size());
  if (total == 0) throw std::invalid_argument("thermal_populations: empty spectrum");
  int kept = total;
  if (cfg.level_cutoff) {
    if (*cfg.level_cutoff < 1 || *cfg.level_cutoff > total)
      throw std::invalid_argument("thermal_populations: level_cutoff out of range");
    kept = *cfg.level_cutoff;
  }
  RealVector p = RealVector::Zero(total);
  const double e0 = energies(0);
  if (cfg.tau == 0.0) {
    int degenerate = 0;
    while (degenerate < kept && energies(degenerate) - e0 <= cfg.ground_degeneracy_tol)
      ++degenerate;
    for (int i = 0; i < degenerate; ++i) p(i) = 1.0 / degenerate;
    return p;
  }
  double z = 0.0;
  for (int i = 0; i < kept; ++i) {
    p(i) = std::exp(-(energies(i) - e0) / cfg.tau);
    z += p(i);
  }
  p.head(kept) /= z;
  return p;
}

DensityMatrix thermal_state(const Spectrum& spectrum, const ThermalConfig& cfg) {
  const RealVector p = thermal_populations(spectrum.energies, cfg);
  const int dim = static_cast<int>(spectrum.energies.size());
  Matrix rho = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (p(i) <= 0.0) continue;
    rho.noalias() += p(i) * (spectrum.states.col(i) * spectrum.states.col(i).adjoint());
  }
  int da = dim, db = 1;
  if (spectrum.params) {
    da = spectrum.params->space.fock_cutoff;
    db = spectrum.params->space.dim_qubits;
  }
  return DensityMatrix{std::move(rho), da, db};
}

int default_fock_cutoff(double alpha) {
  const double a2 = alpha * alpha;
  return static_cast<int>(std::ceil(a2 + 10.0 * std::sqrt(a2 + 1.0) + 20.0));
}

int converge_cutoff(const ModelParams& params, int n_levels, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("converge_cutoff: tol must be > 0");
  params.validate();
  const double g_max = params.coupling.empty()
                           ? 0.0
                           : *std::max_element(params.coupling.begin(), params.coupling.end());
  const double alpha = params.space.qubit_count * g_max / params.omega_r;
  int n = default_fock_cutoff(alpha);

  auto lowest = [&](int cutoff) {
    ModelParams p = params;
    p.space = build_space(params.space.qubit_count, cutoff, params.space.basis);
    Spectrum s = eigendecompose(build_hamiltonian(p));
    return RealVector(s.energies.head(std::min<int>(n_levels, s.energies.size())));
  };

  RealVector ref = lowest(n);
  for (int attempt = 0; attempt < 4; ++attempt) {
    const RealVector refined = lowest(2 * n);
    const int compare = std::min<int>(ref.size(), refined.size());
    const double shift = (ref.head(compare) - refined.head(compare)).cwiseAbs().maxCoeff();
    if (shift < tol) return n;
    n *= 2;
    ref = refined;
  }
  throw std::runtime_error("converge_cutoff: no convergence after four doublings");
}

}  // namespace qrabi
