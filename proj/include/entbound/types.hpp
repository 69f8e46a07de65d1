#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <optional>
#include <vector>

namespace entbound {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;
using Index = Eigen::Index;

// Tolerances that are part of the public contract rather than internal knobs.
namespace tol {
inline constexpr double state_norm = 1e-8;             // |<psi|psi> - 1| on input
inline constexpr double trace_norm = 1e-8;             // |tr rho - 1| on input
inline constexpr double hermiticity = 1e-10;           // density matrices
inline constexpr double operator_hermiticity = 1e-12;  // Hamiltonians
inline constexpr double unitarity = 1e-10;             // measurement bases
inline constexpr double eigenvalue_clip = 1e-9;        // negative spectrum slack
inline constexpr double probability_clip = 1e-14;      // smaller probabilities count as 0
inline constexpr double zero_marginal = 1e-12;         // conditioning skips lighter columns
inline constexpr double stochasticity = 1e-9;          // overlap matrix row/column sums
}  // namespace tol

// Index map between a composite space and its A (x) B tensor factors.
// The composite index is A-major: k = a * dim_b + b.
class BipartiteIndexer {
 public:
  BipartiteIndexer(Index dim_a, Index dim_b);

  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }
  Index dim() const { return dim_a_ * dim_b_; }

  Index combine(Index a, Index b) const { return a * dim_b_ + b; }
  Index factor_a(Index k) const { return k / dim_b_; }
  Index factor_b(Index k) const { return k % dim_b_; }

 private:
  Index dim_a_;
  Index dim_b_;
};

// Normalized pure state. The squared norm of the input must be within
// state_norm of 1; it is then renormalized exactly. An optional split
// records how the amplitudes factor into A (x) B.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes,
                       std::optional<BipartiteIndexer> split = std::nullopt);

  Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  const std::optional<BipartiteIndexer>& split() const { return split_; }

  // Coefficient matrix Psi(a, b) of a bipartite state; requires a split.
  Matrix coefficient_matrix() const;

 private:
  Vector amplitudes_;
  std::optional<BipartiteIndexer> split_;
};

// Density matrix, validated to be Hermitian with unit trace on input and then
// canonicalized ((M + M^dag)/2, divided by its trace). Positivity is enforced
// where the spectrum is actually consumed (see density_spectrum).
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries,
                         std::optional<BipartiteIndexer> split = std::nullopt);

  static DensityMatrix pure(const StateVector& psi);

  Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  const std::optional<BipartiteIndexer>& split() const { return split_; }

 private:
  Matrix entries_;
  std::optional<BipartiteIndexer> split_;
};

// Hermitian operator with either dense or sparse storage. The sparse form
// exists for Krylov paths; both honour the same apply() contract.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix dense);
  HermitianOperator(Index dim, const std::vector<Triplet>& triplets);

  Index dim() const { return dim_; }
  bool is_sparse() const { return sparse_.has_value(); }

  Vector apply(const Vector& v) const;
  Matrix to_dense() const;

  // Max absolute row sum; an upper bound on the spectral norm.
  double norm_bound() const { return norm_bound_; }

 private:
  Index dim_ = 0;
  std::optional<Matrix> dense_;
  std::optional<SparseMatrix> sparse_;
  double norm_bound_ = 0.0;
};

}  // namespace entbound
