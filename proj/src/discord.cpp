#include "qrabi/discord.hpp"

#include <cmath>
#include <stdexcept>

namespace qrabi {

namespace {

constexpr double kZeroEigenvalue = 1e-14;
constexpr double kNegativeEigenvalueTol = -1e-10;
constexpr double kZeroOutcome = 1e-14;
constexpr double kLog2 = 0.69314718055994530942;
constexpr double kTwoPi = 6.283185307179586476925286766559;

double plogp_bits(double p) { return p > kZeroEigenvalue ? -p * std::log2(p) : 0.0; }

}  // namespace

int frame_angle_count(int dim_b) {
  if (dim_b < 2) throw std::invalid_argument("frame_angle_count: dim_b must be >= 2");
  return 3 * dim_b * (dim_b - 1) / 2;
}

Matrix measurement_unitary(const MeasurementFrame& frame) {
  const int d = frame.dim_b;
  if (static_cast<int>(frame.angles.size()) != frame_angle_count(d))
    throw std::invalid_argument("measurement_unitary: angle vector has wrong length");
  Matrix v = Matrix::Identity(d, d);
  std::size_t idx = 0;
  for (int k = 1; k <= d - 1; ++k) {
    for (int n = 1; n <= d - k; ++n) {
      const double p1 = frame.angles[idx], p2 = frame.angles[idx + 1], p3 = frame.angles[idx + 2];
      idx += 3;
      const double s = std::sin(p1), c = std::cos(p1);
      Matrix block = Matrix::Identity(d, d);
      const int a = k - 1, b = k - 1 + n;
      block(a, a) = s * std::exp(Complex(0.0, p2));
      block(a, b) = c * std::exp(Complex(0.0, -p3));
      block(b, a) = c * std::exp(Complex(0.0, p3));
      block(b, b) = -s * std::exp(Complex(0.0, -p2));
      v = v * block;
    }
  }
  return v;
}

double entropy_bits(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double lam = eigenvalues(i);
    if (lam < kNegativeEigenvalueTol)
      throw std::invalid_argument("entropy_bits: eigenvalue below the PSD tolerance");
    s += plogp_bits(lam);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.mat, Eigen::EigenvaluesOnly);
  return entropy_bits(solver.eigenvalues());
}

ConditionalEntropyEngine::ConditionalEntropyEngine(const DensityMatrix& rho_ab, double rank_tol) {
  dim_a_ = rho_ab.dim_a;
  dim_b_ = rho_ab.dim_b;
  if (rho_ab.mat.rows() != static_cast<Eigen::Index>(dim_a_) * dim_b_)
    throw std::invalid_argument("ConditionalEntropyEngine: bipartition mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_ab.mat);
  const RealVector lam = solver.eigenvalues();
  std::vector<int> keep;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < kNegativeEigenvalueTol)
      throw std::invalid_argument("ConditionalEntropyEngine: state is not PSD");
    if (lam(i) > rank_tol) keep.push_back(static_cast<int>(i));
  }
  weights_.resize(keep.size());
  kets_.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    weights_(i) = lam(keep[i]);
    kets_.push_back(
        Matrix(Eigen::Map<const Matrix>(solver.eigenvectors().col(keep[i]).data(), dim_b_, dim_a_)
                   .transpose()));
  }
}

ConditionalEntropyEngine::ConditionalEntropyEngine(const RealVector& weights, const Matrix& states,
                                                   int dim_a, int dim_b, double rank_tol)
    : dim_a_(dim_a), dim_b_(dim_b) {
  if (states.rows() != static_cast<Eigen::Index>(dim_a) * dim_b ||
      states.cols() != weights.size())
    throw std::invalid_argument("ConditionalEntropyEngine: mixture shape mismatch");
  std::vector<int> keep;
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (weights(i) > rank_tol) keep.push_back(static_cast<int>(i));
  weights_.resize(keep.size());
  kets_.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    weights_(i) = weights(keep[i]);
    kets_.push_back(Matrix(
        Eigen::Map<const Matrix>(states.col(keep[i]).data(), dim_b_, dim_a_).transpose()));
  }
}

double ConditionalEntropyEngine::state_entropy() const { return entropy_bits(weights_); }

double ConditionalEntropyEngine::operator()(const MeasurementFrame& frame) const {
  if (frame.dim_b != dim_b_)
    throw std::invalid_argument("ConditionalEntropyEngine: frame dimension mismatch");
  const Matrix v_conj = measurement_unitary(frame).conjugate();
  const int m = rank();

  // projected[i] column j = sqrt(w_i) (I (x) <phi_j| V^dagger) |psi_i>
  std::vector<Matrix> projected;
  projected.reserve(m);
  for (int i = 0; i < m; ++i)
    projected.push_back(std::sqrt(weights_(i)) * (kets_[i] * v_conj));

  double total = 0.0;
  Matrix cols(dim_a_, m);
  for (int j = 0; j < dim_b_; ++j) {
    for (int i = 0; i < m; ++i) cols.col(i) = projected[i].col(j);
    RealVector mu;
    if (m <= dim_a_) {
      // Gram trick: nonzero eigenvalues of the outcome state live in the
      // rank-m subspace
      const Matrix gram = cols.adjoint() * cols;
      Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
      mu = es.eigenvalues();
    } else {
      const Matrix outcome = cols * cols.adjoint();
      Eigen::SelfAdjointEigenSolver<Matrix> es(outcome, Eigen::EigenvaluesOnly);
      mu = es.eigenvalues();
    }
    double p = 0.0;
    double ent = 0.0;  // -sum mu log2 mu
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
      const double w = mu(i);
      if (w <= kZeroEigenvalue) continue;  // roundoff negatives land here too
      p += w;
      ent += plogp_bits(w);
    }
    if (p < kZeroOutcome) continue;
    total += ent + p * std::log2(p);  // = p * S(outcome / p)
  }
  return total;
}

double ConditionalEntropyEngine::operator()(const std::vector<double>& angles) const {
  return (*this)(MeasurementFrame{dim_b_, angles});
}

double conditional_entropy(const DensityMatrix& rho_ab, const MeasurementFrame& frame) {
  if (frame.dim_b != rho_ab.dim_b)
    throw std::invalid_argument("conditional_entropy: frame does not match subsystem B");
  return ConditionalEntropyEngine(rho_ab)(frame);
}

double mutual_information(const DensityMatrix& rho_ab) {
  const double s_a = von_neumann_entropy(partial_trace(rho_ab, Keep::A));
  const double s_b = von_neumann_entropy(partial_trace(rho_ab, Keep::B));
  return s_a + s_b - von_neumann_entropy(rho_ab);
}

DiscordResult quantum_discord(const DensityMatrix& rho_ab, const OptimizerConfig& opt) {
  if (rho_ab.dim_b < 2)
    throw std::invalid_argument("quantum_discord: subsystem B must have dimension >= 2");
  const ConditionalEntropyEngine engine(rho_ab);

  DiscordResult res;
  res.entropy_ab = engine.state_entropy();
  res.entropy_a = von_neumann_entropy(partial_trace(rho_ab, Keep::A));
  res.entropy_b = von_neumann_entropy(partial_trace(rho_ab, Keep::B));
  res.mutual_information = res.entropy_a + res.entropy_b - res.entropy_ab;

  const std::vector<double> x0(frame_angle_count(rho_ab.dim_b), 0.0);
  const Objective objective = [&engine](const std::vector<double>& angles) {
    return engine(angles);
  };
  res.optimizer_trace = basin_hop(objective, x0, opt);
  res.optimizer_warning = !res.optimizer_trace.converged;

  res.conditional_entropy = res.optimizer_trace.best_value;
  res.optimal_frame.dim_b = rho_ab.dim_b;
  res.optimal_frame.angles = res.optimizer_trace.best_point;
  for (auto& a : res.optimal_frame.angles) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
  }

  const double raw = res.entropy_b - res.entropy_ab + res.conditional_entropy;
  res.value = (raw < 0.0 && raw > -1e-9) ? 0.0 : raw;
  return res;
}

}  // namespace qrabi
