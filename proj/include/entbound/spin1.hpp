#pragma once

#include "entbound/bounds.hpp"
#include "entbound/fock.hpp"
#include "entbound/measure.hpp"
#include "entbound/types.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace entbound::spin1 {

// Collective spin-1 ensemble with spin-changing collisions,
//   H = g a+_1 a+_-1 a_0 a_0 + h.c. + [g (N_0 - 1/2) + q] (N_1 + N_-1),
// on the 3-mode Fock basis with modes ordered (+1, 0, -1).
struct Spin1Model {
  int particles = 2;    // N
  double coupling = -1.0;  // g, the energy unit
  double zeeman = 0.0;  // q
};

// Phase boundaries sit at |q| = 2 N |g|.
double critical_zeeman(int particles, double coupling);

HermitianOperator build_spin1_hamiltonian(const Spin1Model& model);

// Quench and ground states never leave n_{+1} = n_{-1}: basis vectors
// (k, N-2k, k), k = 0..floor(N/2). Everything here is real tridiagonal.
class ZeroMagnetizationSpace {
 public:
  explicit ZeroMagnetizationSpace(int particles);

  int particles() const { return particles_; }
  Index dim() const { return static_cast<Index>(particles_ / 2 + 1); }

  RealMatrix hamiltonian(const Spin1Model& model) const;
  StateVector embed(const Vector& coefficients) const;  // into the 3-mode basis
  Index pair_count_index(int k) const { return k; }     // state (k, N-2k, k)

 private:
  int particles_;
  FockBasis basis_;  // the full 3-mode basis embedded into
};

// exp(-i H t) |0,N,0>; stays in the zero-magnetization subspace.
StateVector quench_state(const Spin1Model& model, double time);

std::pair<double, StateVector> subspace_ground_state(const Spin1Model& model);

// --- beam-splitter bipartition -------------------------------------------

// All 3-mode occupations with at most max_particles quanta, grouped by
// particle number n ascending, lex order within each sector. This is the
// outcome space of one half of the split system.
class SubsystemBasis {
 public:
  explicit SubsystemBasis(int max_particles);

  int max_particles() const { return max_particles_; }
  Index dim() const { return static_cast<Index>(tuples_.size()); }

  const std::vector<int>& occupation(Index i) const { return tuples_.at(i); }
  Index index_of(const std::vector<int>& occupation) const;
  int sector_of(Index i) const { return sectors_.at(i); }
  Index sector_begin(int n) const;
  Index sector_size(int n) const;
  std::vector<std::string> labels() const;

 private:
  int max_particles_;
  std::vector<std::vector<int>> tuples_;
  std::vector<int> sectors_;
  std::vector<Index> offsets_;  // offsets_[n]..offsets_[n+1] is sector n
  std::map<std::vector<int>, Index> index_;
};

// State over the 6-mode basis (A+1, A0, A-1, B+1, B0, B-1) at fixed total N,
// produced by splitting each mode 50/50 between the two halves.
struct SplitState {
  int particles = 0;
  FockBasis basis;  // fock_enumerate(6, particles)
  Vector amplitudes;

  SplitState(int n, Vector amps);

  // Coefficient block of the n_A = n sector: rows enumerate A occupations
  // (3-mode basis with n particles), columns B occupations with N - n.
  Matrix sector_block(int n) const;
};

SplitState beam_split(const StateVector& state3);

RealVector number_distribution(const SplitState& s);

// Sector-resolved entanglement sum_n p(n) H(rho_B^(n)); the part of
// -H(A|B) that number-conserving local measurements can certify.
double configurational_coherent_information(const SplitState& s);

// View the split state as a D x D bipartite pure state over SubsystemBasis
// outcomes (unoccupied combinations carry amplitude 0).
StateVector to_bipartite(const SplitState& s, const SubsystemBasis& sub);

// --- mode rotations and sector lifts --------------------------------------

// U = exp(i sum_a c_a lambda_a) * diag(e^{i phi}), Gell-Mann coefficients
// first, mode phases applied before the rotation.
Matrix su3_rotation(const std::array<double, 8>& coefficients,
                    const std::array<double, 3>& phases);

// Single-particle Fourier transform, entries (i/sqrt(3)) exp(2 pi i j k / 3).
Matrix fourier_rotation();

// Gell-Mann coefficients whose su3_rotation (with zero phases) reproduces U
// up to a global phase; used to warm-start optimizations at a known unitary.
std::array<double, 8> rotation_coefficients(const Matrix& u);

// Hermitian L with U = exp(iL) (principal branch of the eigenphases).
Matrix hermitian_log_unitary(const Matrix& u);

// Second-quantized lift of a mode rotation to the n-particle sector,
// dimension C(n+2,2), via the quadratic generator.
Matrix sector_lift(const Matrix& u, int n);

MeasurementBasis bare_mode_basis(const SubsystemBasis& sub);
MeasurementBasis tilted_mode_basis(const Matrix& u, const SubsystemBasis& sub);

SectorPartition subsystem_sectors(const SubsystemBasis& sub);

// --- sweeps -----------------------------------------------------------------

struct TiltParams {
  std::array<double, 8> coefficients{};  // zeros = bare basis
  std::array<double, 3> phases{};
};

// Fourier rotation expressed as warm-startable tilt parameters.
TiltParams fourier_tilt(const std::array<double, 3>& phases = {0.0, 0.0, 0.0});

// Report for one split state and one tilt; X = bare mode basis, Z = tilted,
// identical measurements on both halves. Truth is the configurational part.
BoundReport split_report(const SplitState& s, const TiltParams& tilt);

std::vector<BoundReport> quench_sweep(const Spin1Model& model,
                                      const std::vector<double>& times,
                                      const TiltParams& tilt, unsigned threads = 1);

const char* phase_label(const Spin1Model& model);

std::vector<BoundReport> ground_scan(int particles, double coupling,
                                     const std::vector<double>& q_over_qc,
                                     const TiltParams& tilt, unsigned threads = 1);

struct ScalingFit {
  double slope = 0.0;      // a in a * log2(N + b) + c
  double shift = 0.0;      // b
  double intercept = 0.0;  // c
  double rss = 0.0;
  RealVector residuals;
};

// Least-squares fit of y(N) = a log2(N + b) + c; needs at least 4 points.
ScalingFit fit_log_scaling(const std::vector<int>& particle_numbers,
                           const RealVector& values);

struct ScalingResult {
  std::vector<BoundReport> reports;  // one per even N, ascending
  ScalingFit bound_fit;
  ScalingFit truth_fit;
};

// Twin-Fock-regime ground states across even N at fixed q/q_c; fits both the
// detected bound and the configurational truth against a log2(N + b) + c.
ScalingResult twin_fock_scaling(const std::vector<int>& particle_numbers,
                                double q_over_qc, double coupling,
                                const TiltParams& tilt, unsigned threads = 1);

}  // namespace entbound::spin1
