#include "entbound/types.hpp"

#include <cmath>
#include <stdexcept>

namespace entbound {

BipartiteIndexer::BipartiteIndexer(Index dim_a, Index dim_b)
    : dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a < 1 || dim_b < 1)
    throw std::invalid_argument("BipartiteIndexer: factor dimensions must be positive");
}

StateVector::StateVector(Vector amplitudes, std::optional<BipartiteIndexer> split)
    : amplitudes_(std::move(amplitudes)), split_(split) {
  if (amplitudes_.size() == 0)
    throw std::invalid_argument("StateVector: empty amplitude vector");
  if (split_ && split_->dim() != amplitudes_.size())
    throw std::invalid_argument("StateVector: split does not match dimension");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol::state_norm)
    throw std::invalid_argument("StateVector: amplitudes are not normalized");
  amplitudes_ /= std::sqrt(norm2);
}

Matrix StateVector::coefficient_matrix() const {
  if (!split_)
    throw std::logic_error("StateVector: coefficient_matrix needs a bipartite split");
  // Row-major reshape: amplitudes are A-major, so row a holds the B block.
  return Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(
      amplitudes_.data(), split_->dim_a(), split_->dim_b());
}

DensityMatrix::DensityMatrix(Matrix entries, std::optional<BipartiteIndexer> split)
    : entries_(std::move(entries)), split_(split) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
    throw std::invalid_argument("DensityMatrix: entries must be square and non-empty");
  if (split_ && split_->dim() != entries_.rows())
    throw std::invalid_argument("DensityMatrix: split does not match dimension");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol::hermiticity * scale)
    throw std::invalid_argument("DensityMatrix: entries are not Hermitian");
  const Complex tr = entries_.trace();
  if (std::abs(tr - 1.0) > tol::trace_norm)
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  entries_ = ((entries_ + entries_.adjoint()) / 2.0) / tr.real();
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.split());
}

namespace {

double max_abs_row_sum(const Matrix& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix dense) : dim_(dense.rows()) {
  if (dense.rows() == 0 || dense.rows() != dense.cols())
    throw std::invalid_argument("HermitianOperator: matrix must be square and non-empty");
  const double scale = std::max(1.0, dense.cwiseAbs().maxCoeff());
  const double asym = (dense - dense.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol::operator_hermiticity * scale)
    throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
  dense_ = ((dense + dense.adjoint()) / 2.0).eval();
  norm_bound_ = max_abs_row_sum(*dense_);
}

HermitianOperator::HermitianOperator(Index dim, const std::vector<Triplet>& triplets)
    : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("HermitianOperator: dimension must be positive");
  SparseMatrix m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());  // duplicates are summed
  SparseMatrix adj = SparseMatrix(m.adjoint());
  double scale = 1.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      scale = std::max(scale, std::abs(it.value()));
  const SparseMatrix diff = m - adj;
  double asym = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
      asym = std::max(asym, std::abs(it.value()));
  if (asym > tol::operator_hermiticity * scale)
    throw std::invalid_argument("HermitianOperator: triplets are not Hermitian");
  sparse_ = SparseMatrix(0.5 * (m + adj));
  sparse_->makeCompressed();
  RealVector row_sums = RealVector::Zero(dim);
  for (int k = 0; k < sparse_->outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(*sparse_, k); it; ++it)
      row_sums[it.row()] += std::abs(it.value());
  norm_bound_ = row_sums.size() > 0 ? row_sums.maxCoeff() : 0.0;
}

Vector HermitianOperator::apply(const Vector& v) const {
  if (v.size() != dim_)
    throw std::invalid_argument("HermitianOperator: vector dimension mismatch");
  if (sparse_) return (*sparse_) * v;
  return (*dense_) * v;
}

Matrix HermitianOperator::to_dense() const {
  if (sparse_) return Matrix(*sparse_);
  return *dense_;
}

}  // namespace entbound
