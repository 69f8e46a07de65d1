#include "entbound/measure.hpp"

#include "entbound/entropy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entbound {

MeasurementBasis::MeasurementBasis(Matrix columns, std::vector<std::string> labels)
    : columns_(std::move(columns)), labels_(std::move(labels)) {
  if (columns_.rows() == 0 || columns_.rows() != columns_.cols())
    throw std::invalid_argument("MeasurementBasis: matrix must be square and non-empty");
  if (static_cast<Index>(labels_.size()) != columns_.cols())
    throw std::invalid_argument("MeasurementBasis: one label per outcome required");
  const Matrix gram = columns_.adjoint() * columns_;
  const double defect =
      (gram - Matrix::Identity(columns_.cols(), columns_.cols())).cwiseAbs().maxCoeff();
  if (defect > tol::unitarity)
    throw std::invalid_argument("MeasurementBasis: columns are not orthonormal");
}

MeasurementBasis MeasurementBasis::computational(Index dim) {
  return computational(dim, default_outcome_labels(dim));
}

MeasurementBasis MeasurementBasis::computational(Index dim,
                                                 std::vector<std::string> labels) {
  return MeasurementBasis(Matrix::Identity(dim, dim), std::move(labels));
}

std::vector<std::string> default_outcome_labels(Index dim) {
  std::vector<std::string> labels;
  labels.reserve(dim);
  for (Index i = 0; i < dim; ++i) labels.push_back(std::to_string(i));
  return labels;
}

MeasurementBasis fourier_basis(Index dim) {
  if (dim < 2) throw std::invalid_argument("fourier_basis: dim must be at least 2");
  Matrix m(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Index x = 0; x < dim; ++x)
    for (Index z = 0; z < dim; ++z) {
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(x * z) / dim;
      m(x, z) = scale * Complex(std::cos(phase), std::sin(phase));
    }
  return MeasurementBasis(std::move(m), default_outcome_labels(dim));
}

JointDistribution::JointDistribution(RealMatrix table, std::vector<std::string> labels_a,
                                     std::vector<std::string> labels_b)
    : table_(std::move(table)), labels_a_(std::move(labels_a)), labels_b_(std::move(labels_b)) {
  if (table_.rows() == 0 || table_.cols() == 0)
    throw std::invalid_argument("JointDistribution: empty table");
  if (static_cast<Index>(labels_a_.size()) != table_.rows() ||
      static_cast<Index>(labels_b_.size()) != table_.cols())
    throw std::invalid_argument("JointDistribution: labels do not match table shape");
  double sum = 0.0;
  for (Index i = 0; i < table_.rows(); ++i)
    for (Index j = 0; j < table_.cols(); ++j) {
      if (table_(i, j) < -1e-12)
        throw std::invalid_argument("JointDistribution: negative probability");
      if (table_(i, j) < 0.0) table_(i, j) = 0.0;
      sum += table_(i, j);
    }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("JointDistribution: probabilities do not sum to 1");
}

namespace {

// Skip the projection when the basis is the computational one; the state
// coefficients already are the outcome amplitudes.
bool is_identity_basis(const MeasurementBasis& basis) {
  return basis.columns().isIdentity(1e-14);
}

}  // namespace

JointDistribution joint_distribution(const StateVector& psi,
                                     const BipartiteIndexer& indexer,
                                     const MeasurementBasis& basis_a,
                                     const MeasurementBasis& basis_b) {
  if (psi.dim() != indexer.dim())
    throw std::invalid_argument("joint_distribution: indexer does not match state");
  if (basis_a.dim() != indexer.dim_a() || basis_b.dim() != indexer.dim_b())
    throw std::invalid_argument("joint_distribution: basis dimensions do not match split");
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
      coeff(psi.amplitudes().data(), indexer.dim_a(), indexer.dim_b());
  Matrix amp;
  if (is_identity_basis(basis_a))
    amp = coeff;
  else
    amp = basis_a.columns().adjoint() * coeff;
  if (!is_identity_basis(basis_b)) amp = amp * basis_b.columns().conjugate();
  return JointDistribution(amp.cwiseAbs2(), basis_a.labels(), basis_b.labels());
}

JointDistribution joint_distribution(const DensityMatrix& rho,
                                     const BipartiteIndexer& indexer,
                                     const MeasurementBasis& basis_a,
                                     const MeasurementBasis& basis_b) {
  if (rho.dim() != indexer.dim())
    throw std::invalid_argument("joint_distribution: indexer does not match state");
  if (basis_a.dim() != indexer.dim_a() || basis_b.dim() != indexer.dim_b())
    throw std::invalid_argument("joint_distribution: basis dimensions do not match split");
  const Index da = indexer.dim_a();
  const Index db = indexer.dim_b();
  const Matrix& m = rho.entries();
  RealMatrix table(da, db);
  for (Index x = 0; x < da; ++x) {
    const Vector& col_a = basis_a.columns().col(x);
    // <x| rho |x> on A, leaving a B-space matrix.
    Matrix reduced = Matrix::Zero(db, db);
    for (Index a = 0; a < da; ++a) {
      if (col_a[a] == Complex(0, 0)) continue;
      for (Index a2 = 0; a2 < da; ++a2) {
        if (col_a[a2] == Complex(0, 0)) continue;
        const Complex w = std::conj(col_a[a]) * col_a[a2];
        reduced += w * m.block(a * db, a2 * db, db, db);
      }
    }
    for (Index x2 = 0; x2 < db; ++x2) {
      const Vector& col_b = basis_b.columns().col(x2);
      table(x, x2) = std::real(col_b.dot(reduced * col_b));
    }
  }
  return JointDistribution(std::move(table), basis_a.labels(), basis_b.labels());
}

RealMatrix conditional_given_b(const JointDistribution& joint, double clip) {
  RealMatrix cond = joint.table();
  for (Index i = 0; i < cond.rows(); ++i)
    for (Index j = 0; j < cond.cols(); ++j)
      if (cond(i, j) <= clip) cond(i, j) = 0.0;
  for (Index j = 0; j < cond.cols(); ++j) {
    const double w = cond.col(j).sum();
    if (w <= tol::zero_marginal)
      cond.col(j).setZero();
    else
      cond.col(j) /= w;
  }
  return cond;
}

double conditional_entropy(const JointDistribution& joint, double clip) {
  RealMatrix table = joint.table();
  for (Index i = 0; i < table.rows(); ++i)
    for (Index j = 0; j < table.cols(); ++j)
      if (table(i, j) <= clip) table(i, j) = 0.0;
  double h = 0.0;
  for (Index j = 0; j < table.cols(); ++j) {
    const double w = table.col(j).sum();
    if (w <= tol::zero_marginal) continue;
    h += w * shannon_entropy(RealVector(table.col(j) / w), clip);
  }
  return h;
}

OverlapMatrix::OverlapMatrix(RealMatrix values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.rows() != values_.cols())
    throw std::invalid_argument("OverlapMatrix: matrix must be square and non-empty");
  for (Index i = 0; i < values_.rows(); ++i)
    for (Index j = 0; j < values_.cols(); ++j)
      if (values_(i, j) < -1e-12)
        throw std::invalid_argument("OverlapMatrix: negative overlap");
  for (Index i = 0; i < values_.rows(); ++i) {
    if (std::abs(values_.row(i).sum() - 1.0) > tol::stochasticity ||
        std::abs(values_.col(i).sum() - 1.0) > tol::stochasticity)
      throw std::invalid_argument("OverlapMatrix: rows and columns must sum to 1");
  }
}

OverlapMatrix overlap_matrix(const MeasurementBasis& basis_x,
                             const MeasurementBasis& basis_z) {
  if (basis_x.dim() != basis_z.dim())
    throw std::invalid_argument("overlap_matrix: bases act on different spaces");
  return OverlapMatrix((basis_x.columns().adjoint() * basis_z.columns()).cwiseAbs2());
}

}  // namespace entbound
