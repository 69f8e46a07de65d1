#pragma once

#include "entbound/types.hpp"

#include <string>
#include <vector>

namespace entbound {

// Orthonormal measurement basis. Column z of columns() is the state |b_z>
// projected on during outcome z, i.e. for a basis realized by applying a
// rotation R before counting, columns() = R^dagger.
class MeasurementBasis {
 public:
  MeasurementBasis(Matrix columns, std::vector<std::string> labels);

  Index dim() const { return columns_.cols(); }
  const Matrix& columns() const { return columns_; }
  const std::vector<std::string>& labels() const { return labels_; }

  static MeasurementBasis computational(Index dim);
  static MeasurementBasis computational(Index dim, std::vector<std::string> labels);

 private:
  Matrix columns_;
  std::vector<std::string> labels_;
};

std::vector<std::string> default_outcome_labels(Index dim);

// Discrete Fourier basis, columns (x, z) -> exp(2 pi i x z / d) / sqrt(d);
// mutually unbiased with the computational basis in any dimension.
MeasurementBasis fourier_basis(Index dim);

// Joint outcome table P(x, x') for a measurement on A (rows) and one on B
// (columns). Entries are validated to be nonnegative and to sum to 1.
class JointDistribution {
 public:
  JointDistribution(RealMatrix table, std::vector<std::string> labels_a,
                    std::vector<std::string> labels_b);

  const RealMatrix& table() const { return table_; }
  const std::vector<std::string>& labels_a() const { return labels_a_; }
  const std::vector<std::string>& labels_b() const { return labels_b_; }

  RealVector marginal_a() const { return table_.rowwise().sum(); }
  RealVector marginal_b() const { return table_.colwise().sum().transpose(); }

 private:
  RealMatrix table_;
  std::vector<std::string> labels_a_;
  std::vector<std::string> labels_b_;
};

JointDistribution joint_distribution(const StateVector& psi,
                                     const BipartiteIndexer& indexer,
                                     const MeasurementBasis& basis_a,
                                     const MeasurementBasis& basis_b);

JointDistribution joint_distribution(const DensityMatrix& rho,
                                     const BipartiteIndexer& indexer,
                                     const MeasurementBasis& basis_a,
                                     const MeasurementBasis& basis_b);

// Column-conditional table P(x | x'): column x' of the result sums to 1.
// Entries at or below `clip` are zeroed first; columns with marginal at or
// below zero_marginal are left all-zero and skipped by consumers.
RealMatrix conditional_given_b(const JointDistribution& joint,
                               double clip = tol::probability_clip);

// H(X_A | X'_B) = sum_x' P(x') H(X_A | X'_B = x').
double conditional_entropy(const JointDistribution& joint,
                           double clip = tol::probability_clip);

// Squared overlaps c(x, z) = |<b_z | a_x>|^2 between two bases of the same
// space; doubly stochastic by construction, which is validated on input.
class OverlapMatrix {
 public:
  explicit OverlapMatrix(RealMatrix values);

  const RealMatrix& values() const { return values_; }
  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }

 private:
  RealMatrix values_;
};

OverlapMatrix overlap_matrix(const MeasurementBasis& basis_x,
                             const MeasurementBasis& basis_z);

}  // namespace entbound
