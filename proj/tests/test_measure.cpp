#include "doctest.h"

#include "entbound/entropy.hpp"
#include "entbound/measure.hpp"
#include "entbound/rng.hpp"
#include "entbound/types.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

using namespace entbound;

namespace {

StateVector bell_state(Index d) {
  const BipartiteIndexer indexer(d, d);
  Vector amps = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i)
    amps[indexer.combine(i, i)] = 1.0 / std::sqrt(static_cast<double>(d));
  return StateVector(amps, indexer);
}

JointDistribution make_joint(const RealMatrix& table) {
  return JointDistribution(table, default_outcome_labels(table.rows()),
                           default_outcome_labels(table.cols()));
}

}  // namespace

TEST_CASE("measurement basis validation") {
  CHECK_THROWS_AS(MeasurementBasis(Matrix::Identity(3, 3), {"a", "b"}),
                  std::invalid_argument);
  Matrix tilted(2, 2);
  tilted << 1.0, 0.1, 0.0, 1.0;  // not orthonormal
  CHECK_THROWS_AS(MeasurementBasis(tilted, {"a", "b"}), std::invalid_argument);

  const MeasurementBasis comp = MeasurementBasis::computational(3);
  CHECK(comp.dim() == 3);
  CHECK(comp.labels() == std::vector<std::string>{"0", "1", "2"});
  CHECK((comp.columns() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fourier basis") {
  CHECK_THROWS_AS(fourier_basis(1), std::invalid_argument);

  const MeasurementBasis had = fourier_basis(2);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(had.columns()(0, 0) - Complex(s, 0.0)) < 1e-14);
  CHECK(std::abs(had.columns()(1, 0) - Complex(s, 0.0)) < 1e-14);
  CHECK(std::abs(had.columns()(0, 1) - Complex(s, 0.0)) < 1e-14);
  CHECK(std::abs(had.columns()(1, 1) - Complex(-s, 0.0)) < 1e-14);

  const OverlapMatrix c =
      overlap_matrix(MeasurementBasis::computational(3), fourier_basis(3));
  CHECK((c.values().array() - 1.0 / 3.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("joint distribution of the maximally entangled state") {
  for (const Index d : {2, 3}) {
    const BipartiteIndexer indexer(d, d);
    const MeasurementBasis comp = MeasurementBasis::computational(d);
    const JointDistribution joint =
        joint_distribution(bell_state(d), indexer, comp, comp);
    for (Index x = 0; x < d; ++x)
      for (Index z = 0; z < d; ++z) {
        const double expected = x == z ? 1.0 / static_cast<double>(d) : 0.0;
        CHECK(joint.table()(x, z) == doctest::Approx(expected).epsilon(1e-12));
      }
  }

  // Fourier on both sides is again perfectly correlated: one outcome on B
  // pins the outcome on A, so the conditional entropy vanishes.
  const BipartiteIndexer indexer(3, 3);
  const MeasurementBasis fourier = fourier_basis(3);
  const JointDistribution joint =
      joint_distribution(bell_state(3), indexer, fourier, fourier);
  CHECK(conditional_entropy(joint) == doctest::Approx(0.0).epsilon(1e-9));
  for (Index col = 0; col < 3; ++col) {
    int support = 0;
    for (Index row = 0; row < 3; ++row)
      if (joint.table()(row, col) > 1e-12) ++support;
    CHECK(support == 1);
  }
}

TEST_CASE("joint distribution of a product state") {
  const BipartiteIndexer indexer(2, 2);
  Vector amps = Vector::Zero(4);
  amps[indexer.combine(0, 0)] = 1.0 / std::sqrt(2.0);
  amps[indexer.combine(0, 1)] = 1.0 / std::sqrt(2.0);  // |0> (x) |+>
  const StateVector psi(amps, indexer);
  const MeasurementBasis comp = MeasurementBasis::computational(2);
  const JointDistribution joint = joint_distribution(psi, indexer, comp, comp);
  CHECK(joint.table()(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(joint.table()(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(joint.table()(1, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(joint.table()(1, 1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("product states factorize under any bases") {
  Rng rng(61);
  const BipartiteIndexer indexer(3, 2);
  const Vector a = rng.random_pure_amplitudes(3);
  const Vector b = rng.random_pure_amplitudes(2);
  Vector amps(6);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 2; ++j) amps[indexer.combine(i, j)] = a[i] * b[j];
  const StateVector psi(amps, indexer);
  const MeasurementBasis ba(rng.random_unitary(3), default_outcome_labels(3));
  const MeasurementBasis bb(rng.random_unitary(2), default_outcome_labels(2));
  const JointDistribution joint = joint_distribution(psi, indexer, ba, bb);
  const RealVector pa = joint.marginal_a();
  const RealVector pb = joint.marginal_b();
  for (Index x = 0; x < 3; ++x)
    for (Index y = 0; y < 2; ++y)
      CHECK(joint.table()(x, y) == doctest::Approx(pa[x] * pb[y]).epsilon(1e-9));
}

TEST_CASE("pure and density joint distributions agree") {
  Rng rng(67);
  const BipartiteIndexer indexer(3, 3);
  const StateVector psi(rng.random_pure_amplitudes(9), indexer);
  const MeasurementBasis ba(rng.random_unitary(3), default_outcome_labels(3));
  const MeasurementBasis bb(rng.random_unitary(3), default_outcome_labels(3));
  const JointDistribution from_pure = joint_distribution(psi, indexer, ba, bb);
  const JointDistribution from_rho =
      joint_distribution(DensityMatrix::pure(psi), indexer, ba, bb);
  CHECK((from_pure.table() - from_rho.table()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("marginals match reduced-state measurements") {
  Rng rng(71);
  const BipartiteIndexer indexer(3, 3);
  const StateVector psi(rng.random_pure_amplitudes(9), indexer);
  const MeasurementBasis ba(rng.random_unitary(3), default_outcome_labels(3));
  const MeasurementBasis bb(rng.random_unitary(3), default_outcome_labels(3));
  const JointDistribution joint = joint_distribution(psi, indexer, ba, bb);

  const DensityMatrix rho = DensityMatrix::pure(psi);
  const Matrix rho_a = partial_trace(rho, indexer, Side::A).entries();
  const Matrix rho_b = partial_trace(rho, indexer, Side::B).entries();
  for (Index x = 0; x < 3; ++x) {
    const double direct =
        (ba.columns().col(x).adjoint() * rho_a * ba.columns().col(x)).value().real();
    CHECK(joint.marginal_a()[x] == doctest::Approx(direct).epsilon(1e-9));
  }
  for (Index y = 0; y < 3; ++y) {
    const double direct =
        (bb.columns().col(y).adjoint() * rho_b * bb.columns().col(y)).value().real();
    CHECK(joint.marginal_b()[y] == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("joint distribution validation") {
  RealMatrix bad(2, 2);
  bad << 0.6, 0.2, 0.1, 0.2;  // sums to 1.1
  CHECK_THROWS_AS(make_joint(bad), std::invalid_argument);

  RealMatrix negative(2, 2);
  negative << 0.6, 0.4, -1e-6, 1e-6;
  CHECK_THROWS_AS(make_joint(negative), std::invalid_argument);

  RealMatrix noisy(2, 2);
  noisy << 0.6, 0.4, -1e-13, 1e-13;  // numerical dust is clipped
  CHECK(make_joint(noisy).table()(1, 0) == 0.0);

  CHECK_THROWS_AS(JointDistribution(RealMatrix::Constant(2, 2, 0.25), {"a"},
                                    {"x", "y"}),
                  std::invalid_argument);
}

TEST_CASE("conditional entropy hand values") {
  // Perfect correlation and full independence.
  RealMatrix corr = RealMatrix::Identity(4, 4) * 0.25;
  CHECK(conditional_entropy(make_joint(corr)) == doctest::Approx(0.0).epsilon(1e-12));
  RealMatrix indep = RealMatrix::Constant(4, 4, 1.0 / 16.0);
  CHECK(conditional_entropy(make_joint(indep)) == doctest::Approx(2.0).epsilon(1e-12));

  // Conditioning on the column (B outcome): weights (0.5, 0.5), entropies 0
  // and 1.
  RealMatrix half(2, 2);
  half << 0.5, 0.25, 0.0, 0.25;
  CHECK(conditional_entropy(make_joint(half)) == doctest::Approx(0.5).epsilon(1e-12));

  // The transpose conditions the other way round and gives a different value,
  // pinning the orientation of the table: rows = A outcomes, columns = B.
  RealMatrix transposed = half.transpose();
  CHECK(conditional_entropy(make_joint(transposed)) ==
        doctest::Approx(0.6887218755408672).epsilon(1e-12));
}

TEST_CASE("conditioning never exceeds the marginal entropy") {
  Rng rng(73);
  for (int rep = 0; rep < 20; ++rep) {
    RealMatrix table(3, 4);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 4; ++j) table(i, j) = rng.uniform();
    table /= table.sum();
    const JointDistribution joint = make_joint(table);
    CHECK(conditional_entropy(joint) <=
          shannon_entropy(joint.marginal_a()) + 1e-9);
  }
}

TEST_CASE("zero-weight columns are skipped") {
  RealMatrix table(2, 2);
  table << 0.5, 0.0, 0.5, 0.0;
  const JointDistribution joint = make_joint(table);
  CHECK(conditional_entropy(joint) == doctest::Approx(1.0).epsilon(1e-12));
  const RealMatrix cond = conditional_given_b(joint);
  CHECK(cond.col(0).sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cond.col(1).sum() == 0.0);
}

TEST_CASE("conditional columns are normalized") {
  Rng rng(79);
  RealMatrix table(4, 3);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 3; ++j) table(i, j) = rng.uniform();
  table /= table.sum();
  const RealMatrix cond = conditional_given_b(make_joint(table));
  for (Index j = 0; j < 3; ++j)
    CHECK(cond.col(j).sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("overlap matrices") {
  const MeasurementBasis comp = MeasurementBasis::computational(4);
  const OverlapMatrix self = overlap_matrix(comp, comp);
  CHECK((self.values() - RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

  Rng rng(83);
  const MeasurementBasis x(rng.random_unitary(5), default_outcome_labels(5));
  const MeasurementBasis z(rng.random_unitary(5), default_outcome_labels(5));
  const OverlapMatrix c = overlap_matrix(x, z);
  for (Index i = 0; i < 5; ++i) {
    CHECK(c.values().row(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c.values().col(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
  }

  CHECK_THROWS_AS(overlap_matrix(comp, MeasurementBasis::computational(3)),
                  std::invalid_argument);
  RealMatrix lopsided(2, 2);
  lopsided << 0.9, 0.2, 0.1, 0.8;
  CHECK_THROWS_AS(OverlapMatrix{lopsided}, std::invalid_argument);
}

TEST_CASE("labels travel from bases to distributions") {
  const BipartiteIndexer indexer(2, 2);
  const MeasurementBasis a =
      MeasurementBasis::computational(2, {"left", "right"});
  const MeasurementBasis b = MeasurementBasis::computational(2, {"up", "down"});
  const JointDistribution joint = joint_distribution(bell_state(2), indexer, a, b);
  CHECK(joint.labels_a() == std::vector<std::string>{"left", "right"});
  CHECK(joint.labels_b() == std::vector<std::string>{"up", "down"});
}
