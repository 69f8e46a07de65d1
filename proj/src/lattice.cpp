#include "entbound/lattice.hpp"

#include "entbound/csv.hpp"
#include "entbound/entropy.hpp"
#include "entbound/parallel.hpp"
#include "entbound/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entbound::lattice {

namespace {

void validate(const LatticeModel& model) {
  if (model.sites < 2)
    throw std::invalid_argument("lattice: need at least two sites");
  if (!(model.tunneling > 0.0))
    throw std::invalid_argument("lattice: tunneling rate must be positive");
}

std::vector<std::string> site_labels(int sites) {
  std::vector<std::string> labels;
  labels.reserve(sites);
  for (int i = 1; i <= sites; ++i) labels.push_back("site " + std::to_string(i));
  return labels;
}

}  // namespace

RealMatrix hopping_matrix(const LatticeModel& model) {
  validate(model);
  const int l = model.sites;
  RealMatrix h = RealMatrix::Zero(l, l);
  for (int i = 0; i + 1 < l; ++i) h(i, i + 1) = h(i + 1, i) = -model.tunneling;
  if (model.periodic && l > 2) h(0, l - 1) = h(l - 1, 0) = -model.tunneling;
  return h;
}

HermitianOperator build_hubbard(const LatticeModel& model) {
  validate(model);
  const int l = model.sites;
  const RealMatrix h = hopping_matrix(model);
  const RealMatrix id = RealMatrix::Identity(l, l);
  RealMatrix full = RealMatrix::Zero(l * l, l * l);
  // h (x) 1 + 1 (x) h, then the contact interaction on the diagonal.
  for (int a = 0; a < l; ++a)
    for (int a2 = 0; a2 < l; ++a2)
      for (int b = 0; b < l; ++b)
        for (int b2 = 0; b2 < l; ++b2)
          full(a * l + b, a2 * l + b2) = h(a, a2) * id(b, b2) + id(a, a2) * h(b, b2);
  for (int i = 0; i < l; ++i) full(i * l + i, i * l + i) += model.interaction;
  return HermitianOperator(Matrix(full.cast<Complex>()));
}

MeasurementBasis site_basis(int sites) {
  if (sites < 2) throw std::invalid_argument("lattice: need at least two sites");
  return MeasurementBasis::computational(sites, site_labels(sites));
}

MeasurementBasis tilted_site_basis(const LatticeModel& model, double time) {
  validate(model);
  if (time < 0.0) throw std::invalid_argument("lattice: tilt time must be nonnegative");
  const RealMatrix h = hopping_matrix(model);
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("lattice: hopping eigensolver failed");
  const RealMatrix& v = solver.eigenvectors();
  Vector phases(model.sites);
  for (Index i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(Complex(0, -1) * solver.eigenvalues()[i] * time);
  const Matrix u_t = v.cast<Complex>() * phases.asDiagonal() * v.transpose().cast<Complex>();
  // Counting sites after applying U_t means projecting on U_t^dag |site>.
  return MeasurementBasis(u_t.adjoint(), site_labels(model.sites));
}

BoundReport report_at(const LatticeModel& model, const StateVector& ground, double time) {
  const BipartiteIndexer indexer(model.sites, model.sites);
  const MeasurementBasis x = site_basis(model.sites);
  const MeasurementBasis z = tilted_site_basis(model, time);
  BoundReport r = assemble_report(ground, indexer, x, x, z, z);
  r.meta = {{"L", std::to_string(model.sites)},
            {"U_over_J", csv::format_double(model.interaction / model.tunneling)},
            {"tJ", csv::format_double(time * model.tunneling)}};
  return r;
}

std::vector<BoundReport> sweep(const LatticeModel& model, const std::vector<double>& times,
                               unsigned threads) {
  validate(model);
  if (times.empty()) throw std::invalid_argument("lattice: empty time grid");
  const auto [energy, bare_ground] = ground_state(build_hubbard(model));
  (void)energy;
  const StateVector ground(bare_ground.amplitudes(),
                           BipartiteIndexer(model.sites, model.sites));
  std::vector<BoundReport> reports(times.size());
  parallel_for(times.size(), threads,
               [&](std::size_t i) { reports[i] = report_at(model, ground, times[i]); });
  return reports;
}

}  // namespace entbound::lattice
