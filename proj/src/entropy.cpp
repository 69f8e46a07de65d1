#include "entbound/entropy.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace entbound {

namespace {

std::atomic<LogBase> g_log_base{LogBase::two};

}  // namespace

void set_entropy_log_base(LogBase base) { g_log_base.store(base); }

LogBase entropy_log_base() { return g_log_base.load(); }

const char* log_base_name(LogBase base) { return base == LogBase::two ? "2" : "e"; }

double log_units(double x) {
  return g_log_base.load() == LogBase::two ? std::log2(x) : std::log(x);
}

double shannon_entropy(const RealVector& p, double clip) {
  double h = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] > clip) h -= p[i] * log_units(p[i]);
  }
  return h;
}

RealVector density_spectrum(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.entries());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("density_spectrum: eigensolver failed");
  RealVector values = solver.eigenvalues();
  for (Index i = 0; i < values.size(); ++i) {
    if (values[i] < -tol::eigenvalue_clip)
      throw std::invalid_argument("density_spectrum: matrix is not positive semidefinite");
    if (values[i] < 0.0) values[i] = 0.0;
  }
  return values;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const RealVector spectrum = density_spectrum(rho);
  double h = 0.0;
  for (Index i = 0; i < spectrum.size(); ++i) {
    if (spectrum[i] > tol::eigenvalue_clip) h -= spectrum[i] * log_units(spectrum[i]);
  }
  return h;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const BipartiteIndexer& indexer,
                            Side keep) {
  if (rho.dim() != indexer.dim())
    throw std::invalid_argument("partial_trace: indexer does not match density matrix");
  const Matrix& m = rho.entries();
  const Index da = indexer.dim_a();
  const Index db = indexer.dim_b();
  if (keep == Side::A) {
    Matrix out = Matrix::Zero(da, da);
    for (Index a = 0; a < da; ++a)
      for (Index a2 = 0; a2 < da; ++a2)
        for (Index b = 0; b < db; ++b)
          out(a, a2) += m(indexer.combine(a, b), indexer.combine(a2, b));
    return DensityMatrix(std::move(out));
  }
  Matrix out = Matrix::Zero(db, db);
  for (Index b = 0; b < db; ++b)
    for (Index b2 = 0; b2 < db; ++b2)
      for (Index a = 0; a < da; ++a)
        out(b, b2) += m(indexer.combine(a, b), indexer.combine(a, b2));
  return DensityMatrix(std::move(out));
}

double coherent_information(const DensityMatrix& rho_ab, const BipartiteIndexer& indexer) {
  const DensityMatrix rho_b = partial_trace(rho_ab, indexer, Side::B);
  return von_neumann_entropy(rho_b) - von_neumann_entropy(rho_ab);
}

double coherent_information(const StateVector& psi) {
  if (!psi.split())
    throw std::invalid_argument("coherent_information: state carries no bipartite split");
  const Matrix m = psi.coefficient_matrix();
  return von_neumann_entropy(DensityMatrix(m.adjoint() * m));
}

}  // namespace entbound
