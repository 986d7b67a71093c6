#pragma once

#include <vector>

#include "qrabi/optimizer.hpp"
#include "qrabi/statespace.hpp"

namespace qrabi {

// Angles parameterizing a von Neumann measurement on a d-dimensional
// subsystem: one (phi1, phi2, phi3) triple per two-level rotation block,
// 3*d*(d-1)/2 in total.
struct MeasurementFrame {
  int dim_b = 2;
  std::vector<double> angles;
};

int frame_angle_count(int dim_b);

// Ordered product of two-level blocks V_{k,n}, k = 1..d-1, n = 1..d-k,
// earlier (k,n) applied leftmost. Block entries:
//   v_{k,k}     =  sin(p1) e^{+i p2}     v_{k,k+n}   = cos(p1) e^{-i p3}
//   v_{k+n,k}   =  cos(p1) e^{+i p3}     v_{k+n,k+n} = -sin(p1) e^{-i p2}
Matrix measurement_unitary(const MeasurementFrame& frame);

// Entropy in bits; eigenvalues below 1e-14 count as exact zeros. Throws if an
// eigenvalue is below -1e-10.
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_bits(const RealVector& eigenvalues);

// S(A | Pi^B(theta)) = sum_j p_j S(rho_j) for the projective measurement
// induced by the frame on subsystem B; outcomes with p_j < 1e-14 contribute
// nothing.
double conditional_entropy(const DensityMatrix& rho_ab, const MeasurementFrame& frame);

// Measured-conditional-entropy evaluator built once per state. Works from the
// eigendecomposition of rho_AB, so the cost per evaluation scales with the
// state's rank rather than the full dimension; evaluations are const and safe
// to run concurrently.
class ConditionalEntropyEngine {
 public:
  ConditionalEntropyEngine(const DensityMatrix& rho_ab, double rank_tol = 1e-14);
  // low-rank mixture sum_i weights[i] |states col i><col i| on (dim_a x dim_b)
  ConditionalEntropyEngine(const RealVector& weights, const Matrix& states, int dim_a, int dim_b,
                           double rank_tol = 1e-14);

  double operator()(const MeasurementFrame& frame) const;
  double operator()(const std::vector<double>& angles) const;

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  int rank() const { return static_cast<int>(weights_.size()); }
  double state_entropy() const;  // S(rho_AB) in bits

 private:
  int dim_a_ = 1;
  int dim_b_ = 1;
  RealVector weights_;
  std::vector<Matrix> kets_;  // eigenvector i reshaped to dim_a x dim_b
};

double mutual_information(const DensityMatrix& rho_ab);

struct DiscordResult {
  double value = 0.0;               // bits, clamped at zero within -1e-9
  MeasurementFrame optimal_frame;   // angles wrapped into [0, 2pi)
  double conditional_entropy = 0.0;
  double mutual_information = 0.0;
  double entropy_a = 0.0;
  double entropy_b = 0.0;
  double entropy_ab = 0.0;
  OptimizationOutcome optimizer_trace;
  bool optimizer_warning = false;   // best local run did not reach tolerance
};

// Q = S(rho_B) - S(rho_AB) + min_theta S(A | Pi^B(theta)), minimized by basin
// hopping over the frame angles (restart 0 starts from theta = 0).
DiscordResult quantum_discord(const DensityMatrix& rho_ab, const OptimizerConfig& opt);

}  // namespace qrabi
