#include "entbound/spin1.hpp"

#include "entbound/csv.hpp"
#include "entbound/entropy.hpp"
#include "entbound/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entbound::spin1 {

namespace {

void validate(const Spin1Model& model) {
  if (model.particles < 1)
    throw std::invalid_argument("spin1: need at least one particle");
}

Matrix expi_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spin1: eigensolver failed");
  Vector phases(h.rows());
  for (Index i = 0; i < h.rows(); ++i)
    phases[i] = std::exp(Complex(0, 1) * solver.eigenvalues()[i]);
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

const std::array<Matrix, 8>& gell_mann() {
  static const std::array<Matrix, 8> matrices = [] {
    const Complex i(0, 1);
    std::array<Matrix, 8> m;
    for (auto& g : m) g = Matrix::Zero(3, 3);
    m[0](0, 1) = m[0](1, 0) = 1.0;
    m[1](0, 1) = -i;
    m[1](1, 0) = i;
    m[2](0, 0) = 1.0;
    m[2](1, 1) = -1.0;
    m[3](0, 2) = m[3](2, 0) = 1.0;
    m[4](0, 2) = -i;
    m[4](2, 0) = i;
    m[5](1, 2) = m[5](2, 1) = 1.0;
    m[6](1, 2) = -i;
    m[6](2, 1) = i;
    const double s = 1.0 / std::sqrt(3.0);
    m[7](0, 0) = m[7](1, 1) = s;
    m[7](2, 2) = -2.0 * s;
    return m;
  }();
  return matrices;
}

}  // namespace

double critical_zeeman(int particles, double coupling) {
  if (particles < 1)
    throw std::invalid_argument("spin1: need at least one particle");
  return 2.0 * particles * std::abs(coupling);
}

HermitianOperator build_spin1_hamiltonian(const Spin1Model& model) {
  validate(model);
  const FockBasis basis(3, model.particles);
  const double g = model.coupling;
  const double q = model.zeeman;
  Matrix h = Matrix::Zero(basis.size(), basis.size());
  for (Index i = 0; i < basis.size(); ++i) {
    const auto& occ = basis.occupation(i);
    const int np = occ[0], n0 = occ[1], nm = occ[2];
    h(i, i) = (g * (n0 - 0.5) + q) * (np + nm);
    if (n0 >= 2) {
      // g a+_1 a+_-1 a_0 a_0 |np, n0, nm>
      const Index j = basis.index_of({np + 1, n0 - 2, nm + 1});
      const double amp =
          g * std::sqrt(static_cast<double>(np + 1) * (nm + 1) * n0 * (n0 - 1));
      h(j, i) += amp;
      h(i, j) += amp;
    }
  }
  return HermitianOperator(std::move(h));
}

ZeroMagnetizationSpace::ZeroMagnetizationSpace(int particles)
    : particles_(particles), basis_(3, particles) {
  if (particles < 1)
    throw std::invalid_argument("spin1: need at least one particle");
}

RealMatrix ZeroMagnetizationSpace::hamiltonian(const Spin1Model& model) const {
  if (model.particles != particles_)
    throw std::invalid_argument("spin1: model particle number does not match subspace");
  const int n = particles_;
  const double g = model.coupling;
  const double q = model.zeeman;
  RealMatrix h = RealMatrix::Zero(dim(), dim());
  for (Index k = 0; k < dim(); ++k) {
    h(k, k) = (g * (n - 2 * k - 0.5) + q) * 2.0 * k;
    if (k + 1 < dim()) {
      const double off = g * (k + 1) *
                         std::sqrt(static_cast<double>(n - 2 * k) * (n - 2 * k - 1));
      h(k, k + 1) = h(k + 1, k) = off;
    }
  }
  return h;
}

StateVector ZeroMagnetizationSpace::embed(const Vector& coefficients) const {
  if (coefficients.size() != dim())
    throw std::invalid_argument("spin1: coefficient vector does not match subspace");
  Vector out = Vector::Zero(basis_.size());
  for (Index k = 0; k < dim(); ++k) {
    const int kk = static_cast<int>(k);
    out[basis_.index_of({kk, particles_ - 2 * kk, kk})] = coefficients[k];
  }
  return StateVector(std::move(out));
}

StateVector quench_state(const Spin1Model& model, double time) {
  validate(model);
  const ZeroMagnetizationSpace space(model.particles);
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(space.hamiltonian(model));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spin1: subspace eigensolver failed");
  // start from |0,N,0>, the k = 0 subspace vector
  const RealVector overlap = solver.eigenvectors().row(0).transpose();
  Vector coeff = Vector::Zero(space.dim());
  for (Index i = 0; i < space.dim(); ++i)
    coeff += std::exp(Complex(0, -1) * solver.eigenvalues()[i] * time) * overlap[i] *
             solver.eigenvectors().col(i).cast<Complex>();
  return space.embed(coeff);
}

std::pair<double, StateVector> subspace_ground_state(const Spin1Model& model) {
  validate(model);
  const ZeroMagnetizationSpace space(model.particles);
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(space.hamiltonian(model));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spin1: subspace eigensolver failed");
  return {solver.eigenvalues()[0],
          space.embed(solver.eigenvectors().col(0).cast<Complex>())};
}

SubsystemBasis::SubsystemBasis(int max_particles) : max_particles_(max_particles) {
  if (max_particles < 0)
    throw std::invalid_argument("spin1: negative particle cap");
  offsets_.push_back(0);
  for (int n = 0; n <= max_particles; ++n) {
    const FockBasis sector(3, n);
    for (const auto& occ : sector.states()) {
      index_[occ] = static_cast<Index>(tuples_.size());
      tuples_.push_back(occ);
      sectors_.push_back(n);
    }
    offsets_.push_back(static_cast<Index>(tuples_.size()));
  }
}

Index SubsystemBasis::index_of(const std::vector<int>& occupation) const {
  auto it = index_.find(occupation);
  if (it == index_.end())
    throw std::out_of_range("spin1: occupation tuple not in subsystem basis");
  return it->second;
}

Index SubsystemBasis::sector_begin(int n) const {
  if (n < 0 || n > max_particles_)
    throw std::out_of_range("spin1: sector out of range");
  return offsets_[n];
}

Index SubsystemBasis::sector_size(int n) const {
  if (n < 0 || n > max_particles_)
    throw std::out_of_range("spin1: sector out of range");
  return offsets_[n + 1] - offsets_[n];
}

std::vector<std::string> SubsystemBasis::labels() const {
  std::vector<std::string> out;
  out.reserve(tuples_.size());
  for (const auto& occ : tuples_) out.push_back(occupation_label(occ));
  return out;
}

SplitState::SplitState(int n, Vector amps)
    : particles(n), basis(6, n), amplitudes(std::move(amps)) {
  if (amplitudes.size() != basis.size())
    throw std::invalid_argument("spin1: split amplitudes do not match 6-mode basis");
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-10)
    throw std::runtime_error("spin1: split state lost normalization");
  amplitudes /= std::sqrt(norm2);
}

Matrix SplitState::sector_block(int n) const {
  if (n < 0 || n > particles)
    throw std::out_of_range("spin1: sector out of range");
  const FockBasis a_basis(3, n);
  const FockBasis b_basis(3, particles - n);
  Matrix block(a_basis.size(), b_basis.size());
  std::vector<int> occ(6);
  for (Index i = 0; i < a_basis.size(); ++i)
    for (Index j = 0; j < b_basis.size(); ++j) {
      const auto& a = a_basis.occupation(i);
      const auto& b = b_basis.occupation(j);
      std::copy(a.begin(), a.end(), occ.begin());
      std::copy(b.begin(), b.end(), occ.begin() + 3);
      block(i, j) = amplitudes[basis.index_of(occ)];
    }
  return block;
}

SplitState beam_split(const StateVector& state3) {
  // Recover N from dim = (N+1)(N+2)/2.
  int n = 0;
  while (static_cast<Index>((n + 1) * (n + 2) / 2) < state3.dim()) ++n;
  if (static_cast<Index>((n + 1) * (n + 2) / 2) != state3.dim())
    throw std::invalid_argument("beam_split: state is not on a 3-mode Fock basis");
  const FockBasis basis3(3, n);
  const FockBasis basis6(6, n);
  Vector out = Vector::Zero(basis6.size());
  const double half_weight = std::ldexp(1.0, -n);  // 1 / 2^N
  std::vector<int> occ(6);
  for (Index i = 0; i < basis3.size(); ++i) {
    const Complex amp = state3.amplitudes()[i];
    if (amp == Complex(0, 0)) continue;
    const auto& src = basis3.occupation(i);
    for (int mp = 0; mp <= src[0]; ++mp)
      for (int m0 = 0; m0 <= src[1]; ++m0)
        for (int mm = 0; mm <= src[2]; ++mm) {
          const double weight = static_cast<double>(binomial(src[0], mp)) *
                                static_cast<double>(binomial(src[1], m0)) *
                                static_cast<double>(binomial(src[2], mm)) * half_weight;
          occ[0] = mp;
          occ[1] = m0;
          occ[2] = mm;
          occ[3] = src[0] - mp;
          occ[4] = src[1] - m0;
          occ[5] = src[2] - mm;
          out[basis6.index_of(occ)] += amp * std::sqrt(weight);
        }
  }
  return SplitState(n, std::move(out));
}

RealVector number_distribution(const SplitState& s) {
  RealVector p = RealVector::Zero(s.particles + 1);
  for (Index i = 0; i < s.basis.size(); ++i) {
    const auto& occ = s.basis.occupation(i);
    p[occ[0] + occ[1] + occ[2]] += std::norm(s.amplitudes[i]);
  }
  return p;
}

double configurational_coherent_information(const SplitState& s) {
  double total = 0.0;
  for (int n = 0; n <= s.particles; ++n) {
    const Matrix block = s.sector_block(n);
    const double p = block.squaredNorm();
    if (p <= tol::probability_clip) continue;
    const DensityMatrix rho_b((block.adjoint() * block) / p);
    total += p * von_neumann_entropy(rho_b);
  }
  return total;
}

StateVector to_bipartite(const SplitState& s, const SubsystemBasis& sub) {
  if (sub.max_particles() != s.particles)
    throw std::invalid_argument("spin1: subsystem basis does not match split state");
  const Index d = sub.dim();
  const BipartiteIndexer indexer(d, d);
  Vector out = Vector::Zero(indexer.dim());
  std::vector<int> a(3), b(3);
  for (Index i = 0; i < s.basis.size(); ++i) {
    const auto& occ = s.basis.occupation(i);
    std::copy(occ.begin(), occ.begin() + 3, a.begin());
    std::copy(occ.begin() + 3, occ.end(), b.begin());
    out[indexer.combine(sub.index_of(a), sub.index_of(b))] = s.amplitudes[i];
  }
  return StateVector(std::move(out), indexer);
}

Matrix su3_rotation(const std::array<double, 8>& coefficients,
                    const std::array<double, 3>& phases) {
  Matrix c = Matrix::Zero(3, 3);
  for (int a = 0; a < 8; ++a) c += coefficients[a] * gell_mann()[a];
  Vector imprint(3);
  for (int k = 0; k < 3; ++k) imprint[k] = std::exp(Complex(0, 1) * phases[k]);
  // imprint the mode phases first, then rotate
  return expi_hermitian(c) * Matrix(imprint.asDiagonal());
}

Matrix fourier_rotation() {
  Matrix u(3, 3);
  const Complex i(0, 1);
  const double s = 1.0 / std::sqrt(3.0);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      const double phase = 2.0 * std::numbers::pi * j * k / 3.0;
      u(j, k) = i * s * Complex(std::cos(phase), std::sin(phase));
    }
  return u;
}

Matrix hermitian_log_unitary(const Matrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0)
    throw std::invalid_argument("spin1: log of a non-square matrix");
  const Index d = u.rows();
  if ((u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol::unitarity)
    throw std::invalid_argument("spin1: matrix is not unitary");
  // U is normal, so its Schur form is diagonal; take principal eigenphases.
  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("spin1: Schur decomposition failed");
  Vector phases(d);
  for (Index i = 0; i < d; ++i) phases[i] = std::arg(schur.matrixT()(i, i));
  Matrix log = schur.matrixU() * phases.asDiagonal() * schur.matrixU().adjoint();
  log = ((log + log.adjoint()) / 2.0).eval();
  if ((expi_hermitian(log) - u).cwiseAbs().maxCoeff() > 1e-8)
    throw std::runtime_error("spin1: unitary log reconstruction failed");
  return log;
}

std::array<double, 8> rotation_coefficients(const Matrix& u) {
  if (u.rows() != 3 || u.cols() != 3)
    throw std::invalid_argument("spin1: mode rotations are 3x3");
  const Matrix log = hermitian_log_unitary(u);
  std::array<double, 8> coeffs{};
  // tr(lambda_a lambda_b) = 2 delta_ab; the trace part becomes a global phase.
  for (int a = 0; a < 8; ++a)
    coeffs[a] = std::real((gell_mann()[a] * log).trace()) / 2.0;
  return coeffs;
}

Matrix sector_lift(const Matrix& u, int n) {
  if (n < 0) throw std::invalid_argument("spin1: negative sector");
  if (u.rows() != 3 || u.cols() != 3)
    throw std::invalid_argument("spin1: mode rotations are 3x3");
  if (n == 0) return Matrix::Identity(1, 1);
  if (n == 1) return u;
  const Matrix log = hermitian_log_unitary(u);
  const FockBasis basis(3, n);
  Matrix generator = Matrix::Zero(basis.size(), basis.size());
  for (Index i = 0; i < basis.size(); ++i) {
    const auto& occ = basis.occupation(i);
    for (int j = 0; j < 3; ++j) {
      if (occ[j] > 0) generator(i, i) += log(j, j) * static_cast<double>(occ[j]);
      for (int k = 0; k < 3; ++k) {
        if (j == k || occ[k] == 0) continue;
        std::vector<int> target = occ;
        target[k] -= 1;
        target[j] += 1;
        const Index t = basis.index_of(target);
        generator(t, i) +=
            log(j, k) * std::sqrt(static_cast<double>(occ[j] + 1) * occ[k]);
      }
    }
  }
  return expi_hermitian(generator);
}

MeasurementBasis bare_mode_basis(const SubsystemBasis& sub) {
  return MeasurementBasis::computational(sub.dim(), sub.labels());
}

MeasurementBasis tilted_mode_basis(const Matrix& u, const SubsystemBasis& sub) {
  Matrix lifted = Matrix::Zero(sub.dim(), sub.dim());
  for (int n = 0; n <= sub.max_particles(); ++n) {
    const Index begin = sub.sector_begin(n);
    const Index size = sub.sector_size(n);
    lifted.block(begin, begin, size, size) = sector_lift(u, n);
  }
  // Counting mode occupations after applying the lifted rotation projects the
  // unrotated state onto its adjoint columns.
  return MeasurementBasis(lifted.adjoint(), sub.labels());
}

SectorPartition subsystem_sectors(const SubsystemBasis& sub) {
  SectorPartition partition;
  partition.x_sector.reserve(sub.dim());
  for (Index i = 0; i < sub.dim(); ++i) partition.x_sector.push_back(sub.sector_of(i));
  partition.z_sector = partition.x_sector;
  return partition;
}

TiltParams fourier_tilt(const std::array<double, 3>& phases) {
  return {rotation_coefficients(fourier_rotation()), phases};
}

BoundReport split_report(const SplitState& s, const TiltParams& tilt) {
  const SubsystemBasis sub(s.particles);
  const MeasurementBasis x = bare_mode_basis(sub);
  const MeasurementBasis z =
      tilted_mode_basis(su3_rotation(tilt.coefficients, tilt.phases), sub);
  const StateVector psi = to_bipartite(s, sub);
  const BipartiteIndexer indexer(sub.dim(), sub.dim());
  return assemble_report(psi, indexer, x, x, z, z, subsystem_sectors(sub),
                         configurational_coherent_information(s));
}

namespace {

std::vector<std::pair<std::string, std::string>> tilt_meta(const TiltParams& tilt) {
  std::vector<std::pair<std::string, std::string>> meta;
  for (int a = 0; a < 8; ++a)
    meta.emplace_back("c" + std::to_string(a + 1), csv::format_double(tilt.coefficients[a]));
  meta.emplace_back("phi1", csv::format_double(tilt.phases[0]));
  meta.emplace_back("phi0", csv::format_double(tilt.phases[1]));
  meta.emplace_back("phim1", csv::format_double(tilt.phases[2]));
  return meta;
}

void prepend_meta(BoundReport& report,
                  std::vector<std::pair<std::string, std::string>> front,
                  const TiltParams& tilt, const char* label = nullptr) {
  auto tail = tilt_meta(tilt);
  front.insert(front.end(), tail.begin(), tail.end());
  if (label != nullptr) front.emplace_back("phase", label);
  report.meta = std::move(front);
}

}  // namespace

std::vector<BoundReport> quench_sweep(const Spin1Model& model,
                                      const std::vector<double>& times,
                                      const TiltParams& tilt, unsigned threads) {
  validate(model);
  if (times.empty()) throw std::invalid_argument("spin1: empty time grid");
  std::vector<BoundReport> reports(times.size());
  parallel_for(times.size(), threads, [&](std::size_t i) {
    const SplitState split = beam_split(quench_state(model, times[i]));
    BoundReport r = split_report(split, tilt);
    prepend_meta(r,
                 {{"N", std::to_string(model.particles)},
                  {"g", csv::format_double(model.coupling)},
                  {"tg", csv::format_double(times[i] * std::abs(model.coupling))}},
                 tilt);
    reports[i] = std::move(r);
  });
  return reports;
}

const char* phase_label(const Spin1Model& model) {
  const double qc = critical_zeeman(model.particles, model.coupling);
  if (model.zeeman >= qc) return "polar";
  if (model.zeeman <= -qc) return "twin-fock";
  return "broken-axisymmetry";
}

std::vector<BoundReport> ground_scan(int particles, double coupling,
                                     const std::vector<double>& q_over_qc,
                                     const TiltParams& tilt, unsigned threads) {
  if (q_over_qc.empty()) throw std::invalid_argument("spin1: empty q grid");
  if (coupling == 0.0) throw std::invalid_argument("spin1: coupling must be nonzero");
  const double qc = critical_zeeman(particles, coupling);
  std::vector<BoundReport> reports(q_over_qc.size());
  parallel_for(q_over_qc.size(), threads, [&](std::size_t i) {
    const Spin1Model model{particles, coupling, q_over_qc[i] * qc};
    const SplitState split = beam_split(subspace_ground_state(model).second);
    BoundReport r = split_report(split, tilt);
    prepend_meta(r,
                 {{"N", std::to_string(particles)},
                  {"g", csv::format_double(coupling)},
                  {"q_over_qc", csv::format_double(q_over_qc[i])}},
                 tilt, phase_label(model));
    reports[i] = std::move(r);
  });
  return reports;
}

ScalingFit fit_log_scaling(const std::vector<int>& particle_numbers,
                           const RealVector& values) {
  const Index m = static_cast<Index>(particle_numbers.size());
  if (m != values.size())
    throw std::invalid_argument("spin1: fit series length mismatch");
  if (m < 4) throw std::invalid_argument("spin1: under-determined scaling fit");
  int n_min = particle_numbers.front();
  for (int n : particle_numbers) {
    if (n < 1) throw std::invalid_argument("spin1: particle numbers must be positive");
    n_min = std::min(n_min, n);
  }

  // Profile the nonlinear shift b on a grid, solving the linear (a, c)
  // subproblem exactly, then polish b by golden-section search.
  auto linear_fit = [&](double b) {
    RealMatrix design(m, 2);
    for (Index i = 0; i < m; ++i) {
      design(i, 0) = std::log2(particle_numbers[i] + b);
      design(i, 1) = 1.0;
    }
    const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(values);
    const RealVector residuals = values - design * beta;
    return std::tuple<double, double, double, RealVector>(
        beta[0], beta[1], residuals.squaredNorm(), residuals);
  };

  const double b_floor = -n_min + 1e-6;
  double best_b = std::max(b_floor, -n_min + 0.25);
  double best_rss = std::numeric_limits<double>::infinity();
  for (double b = best_b; b <= 64.0; b += 0.25) {
    const double rss = std::get<2>(linear_fit(b));
    if (rss < best_rss) {
      best_rss = rss;
      best_b = b;
    }
  }
  double lo = std::max(b_floor, best_b - 0.25);
  double hi = best_b + 0.25;
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int iter = 0; iter < 60; ++iter) {
    const double x1 = hi - golden * (hi - lo);
    const double x2 = lo + golden * (hi - lo);
    if (std::get<2>(linear_fit(x1)) < std::get<2>(linear_fit(x2)))
      hi = x2;
    else
      lo = x1;
  }
  const double b = (lo + hi) / 2.0;
  const auto [a, c, rss, residuals] = linear_fit(b);
  ScalingFit fit;
  fit.slope = a;
  fit.shift = b;
  fit.intercept = c;
  fit.rss = rss;
  fit.residuals = residuals;
  return fit;
}

ScalingResult twin_fock_scaling(const std::vector<int>& particle_numbers,
                                double q_over_qc, double coupling,
                                const TiltParams& tilt, unsigned threads) {
  if (coupling == 0.0) throw std::invalid_argument("spin1: coupling must be nonzero");
  std::vector<int> even;
  for (int n : particle_numbers) {
    if (n < 2) throw std::invalid_argument("spin1: need at least two particles per point");
    if (n % 2 == 0) even.push_back(n);
  }
  if (even.size() < 4)
    throw std::invalid_argument("spin1: under-determined scaling fit (need 4 even N)");

  ScalingResult result;
  result.reports.resize(particle_numbers.size());
  parallel_for(particle_numbers.size(), threads, [&](std::size_t i) {
    const int n = particle_numbers[i];
    const Spin1Model model{n, coupling, q_over_qc * critical_zeeman(n, coupling)};
    const SplitState split = beam_split(subspace_ground_state(model).second);
    BoundReport r = split_report(split, tilt);
    prepend_meta(r,
                 {{"N", std::to_string(n)},
                  {"g", csv::format_double(coupling)},
                  {"q_over_qc", csv::format_double(q_over_qc)}},
                 tilt, phase_label(model));
    result.reports[i] = std::move(r);
  });

  RealVector bound_series(static_cast<Index>(even.size()));
  RealVector truth_series(static_cast<Index>(even.size()));
  Index j = 0;
  for (std::size_t i = 0; i < particle_numbers.size(); ++i) {
    if (particle_numbers[i] % 2 != 0) continue;
    bound_series[j] = result.reports[i].bound_fsd;
    truth_series[j] = result.reports[i].true_neg_hab.value();
    ++j;
  }
  result.bound_fit = fit_log_scaling(even, bound_series);
  result.truth_fit = fit_log_scaling(even, truth_series);
  return result;
}

}  // namespace entbound::spin1
