#include "qrabi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qrabi/parallel.hpp"
#include "qrabi/rng.hpp"

namespace qrabi {

std::vector<double> ScanRecord::g_values() const {
  std::vector<double> g;
  g.reserve(points.size());
  for (const auto& p : points) g.push_back(p.g_over_omega);
  return g;
}

std::vector<double> ScanRecord::discord_values() const {
  std::vector<double> q;
  q.reserve(points.size());
  for (const auto& p : points) q.push_back(p.discord);
  return q;
}

DensityMatrix qubit_thermal_state(const ModelParams& params, const ThermalConfig& cfg) {
  params.validate();
  if (params.space.basis != Basis::FullTensor)
    throw std::invalid_argument("qubit_thermal_state: needs the FullTensor basis");
  if (!params.homogeneous())
    throw std::invalid_argument("qubit_thermal_state: needs homogeneous couplings");
  const int n = params.space.qubit_count;
  const int n_max = params.space.fock_cutoff;

  // per-sector spectra; global partition function weighs each block by its
  // multiplicity
  struct Block {
    SpinSector sector;
    Spectrum spec;
  };
  std::vector<Block> blocks;
  double e0 = 0.0;
  for (const SpinSector& sector : spin_sectors(n)) {
    Matrix h;
    if (sector.two_j == 0) {
      const OperatorSet ops = build_operators(build_space(0, n_max, Basis::FullTensor));
      h = params.omega_r * (ops.annihilation.adjoint() * ops.annihilation);
    } else {
      h = build_hamiltonian(uniform_params(sector.two_j, n_max, Basis::DickeSymmetric,
                                           params.omega_r, params.omega_q.front(),
                                           params.coupling.front(), params.convention));
    }
    blocks.push_back({sector, eigendecompose(h)});
    e0 = blocks.size() == 1 ? blocks.back().spec.energies(0)
                            : std::min(e0, blocks.back().spec.energies(0));
  }

  if (cfg.tau < 0.0) throw std::invalid_argument("qubit_thermal_state: negative temperature");
  double z = 0.0;
  std::vector<RealVector> weights;
  for (const Block& b : blocks) {
    RealVector w;
    if (cfg.tau == 0.0) {
      w = RealVector::Zero(b.spec.energies.size());
      for (Eigen::Index i = 0; i < w.size(); ++i)
        if (b.spec.energies(i) - e0 <= cfg.ground_degeneracy_tol) w(i) = 1.0;
    } else {
      w = (-(b.spec.energies.array() - e0) / cfg.tau).exp();
    }
    z += b.sector.multiplicity * w.sum();
    weights.push_back(std::move(w));
  }

  const int dim = 1 << n;
  Matrix rho = Matrix::Zero(dim, dim);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const Block& b = blocks[bi];
    const int d_s = b.sector.two_j + 1;
    // field-traced thermal block on the multiplet
    RealMatrix reduced = RealMatrix::Zero(d_s, d_s);
    const RealMatrix v = b.spec.states.real();  // block Hamiltonians are real symmetric
    for (Eigen::Index i = 0; i < weights[bi].size(); ++i) {
      const double w = weights[bi](i) / z;
      if (w <= 1e-18) continue;
      const Eigen::Map<const RealMatrix> psi(v.col(i).data(), d_s, n_max);
      reduced.noalias() += w * (psi * psi.transpose());
    }
    for (const RealMatrix& iso : sector_isometries(n, b.sector.two_j))
      rho += (iso * reduced * iso.transpose()).cast<Complex>();
  }
  return DensityMatrix{std::move(rho), 1 << (n - 1), 2};
}

namespace {

ScanPoint scan_point(const ModelParams& base, double tau, double g, Partition partition,
                     const OptimizerConfig& opt, const ScanSettings& settings, int n_max) {
  ScanPoint point;
  point.g_over_omega = g;

  ModelParams params = base;
  params.space = build_space(base.space.qubit_count, n_max, base.space.basis);
  params.coupling.assign(base.space.qubit_count, g);
  params.validate();

  const ThermalConfig thermal{tau, settings.level_cutoff, 1e-9};
  DiscordResult result;
  if (partition == Partition::FieldVsQubits) {
    result = quantum_discord(thermal_state(solve(params), thermal), opt);
  } else {
    result = quantum_discord(qubit_thermal_state(params, thermal), opt);
  }
  point.discord = result.value;
  point.optimizer_warning = result.optimizer_warning;
  point.optimal_angles = result.optimal_frame.angles;
  return point;
}

}  // namespace

ScanRecord discord_scan(const ModelParams& base, double tau, const std::vector<double>& g_grid,
                        Partition partition, const OptimizerConfig& opt,
                        const ScanSettings& settings) {
  base.validate();
  if (g_grid.empty()) throw std::invalid_argument("discord_scan: empty coupling grid");
  for (std::size_t i = 1; i < g_grid.size(); ++i)
    if (g_grid[i] <= g_grid[i - 1])
      throw std::invalid_argument("discord_scan: grid must be strictly increasing");
  if (partition == Partition::OneVsRest) {
    if (base.space.qubit_count < 2)
      throw std::invalid_argument("discord_scan: OneVsRest requires at least two qubits");
    if (base.space.basis != Basis::FullTensor)
      throw std::invalid_argument("discord_scan: OneVsRest requires the FullTensor basis");
  }

  ScanRecord record;
  record.qubit_count = base.space.qubit_count;
  record.tau = tau;
  record.partition = partition;
  record.basis = base.space.basis;
  record.master_seed = opt.master_seed;
  record.points.resize(g_grid.size());

  auto cutoff_for = [&](double g) {
    if (settings.fock_cutoff_override) return *settings.fock_cutoff_override;
    return default_fock_cutoff(base.space.qubit_count * g / base.omega_r);
  };
  record.fock_cutoff = cutoff_for(g_grid.back());

  parallel_for(g_grid.size(), settings.threads, [&](std::size_t i) {
    OptimizerConfig point_opt = opt;
    point_opt.master_seed = derive_seed(opt.master_seed, i);
    try {
      record.points[i] =
          scan_point(base, tau, g_grid[i], partition, point_opt, settings, cutoff_for(g_grid[i]));
    } catch (const std::exception& err) {
      record.points[i].g_over_omega = g_grid[i];
      record.points[i].error = err.what();
    }
  });
  return record;
}

Extremum locate_extremum(const std::vector<double>& x, const std::vector<double>& y,
                         ExtremumKind kind) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("locate_extremum: need at least three samples");

  const double lo = *std::min_element(y.begin(), y.end());
  const double hi = *std::max_element(y.begin(), y.end());
  if (hi - lo < 1e-12) {
    Extremum flat;
    flat.degenerate = true;
    flat.location = 0.5 * (x.front() + x.back());
    flat.value = y.front();
    return flat;
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (kind == ExtremumKind::Max ? y[i] > y[best] : y[i] < y[best]) best = i;
  }
  Extremum ext;
  ext.value = y[best];
  ext.location = x[best];
  if (best == 0 || best + 1 == y.size()) {
    ext.boundary = true;
    return ext;
  }
  // parabola through the three surrounding samples
  const double d1 = x[best] - x[best - 1];
  const double d2 = x[best] - x[best + 1];
  const double y0 = y[best - 1], y1 = y[best], y2 = y[best + 1];
  const double den = d1 * (y1 - y2) - d2 * (y1 - y0);
  if (std::abs(den) > 0.0) {
    const double vertex = x[best] - 0.5 * (d1 * d1 * (y1 - y2) - d2 * d2 * (y1 - y0)) / den;
    // vertex value from the Lagrange form
    const double l0 = (vertex - x[best]) * (vertex - x[best + 1]) / (d1 * (x[best - 1] - x[best + 1]));
    const double l1 = (vertex - x[best - 1]) * (vertex - x[best + 1]) / (-d1 * -d2);
    const double l2 = (vertex - x[best - 1]) * (vertex - x[best]) / ((x[best + 1] - x[best - 1]) * -d2);
    ext.location = vertex;
    ext.value = y0 * l0 + y1 * l1 + y2 * l2;
  }
  return ext;
}

PowerLawFit power_law_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("power_law_fit: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("power_law_fit: need at least two points");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] <= 0.0 || y[i] <= 0.0)
      throw std::invalid_argument("power_law_fit: inputs must be strictly positive");

  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("power_law_fit: degenerate abscissa");
  const double slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / n;

  double ss_res = 0, ss_tot = 0;
  const double mean_ly = sy / n;
  for (std::size_t i = 0; i < n; ++i) {
    const double ly = std::log(y[i]);
    const double pred = slope * std::log(x[i]) + intercept;
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - mean_ly) * (ly - mean_ly);
  }
  PowerLawFit fit;
  fit.exponent = slope;
  fit.prefactor = std::exp(intercept);
  fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  fit.n_points = static_cast<int>(n);
  return fit;
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("linear_grid: count must be >= 1");
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
  return g;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (lo <= 0.0 || hi <= 0.0) throw std::invalid_argument("log_grid: bounds must be positive");
  if (count < 1) throw std::invalid_argument("log_grid: count must be >= 1");
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < count; ++i) g[i] = lo * std::exp(ratio * i / (count - 1));
  return g;
}

}  // namespace qrabi
