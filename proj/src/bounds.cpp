#include "entbound/bounds.hpp"

#include "entbound/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace entbound {

double q_mu(const OverlapMatrix& c) {
  const double max_overlap = std::min(c.values().maxCoeff(), 1.0);
  return -log_units(max_overlap);
}

double q_c(const RealVector& x_marginal, const OverlapMatrix& c, double clip) {
  if (x_marginal.size() != c.rows())
    throw std::invalid_argument("q_c: marginal does not match overlap matrix");
  double q = 0.0;
  for (Index x = 0; x < x_marginal.size(); ++x) {
    if (x_marginal[x] <= clip) continue;
    const double row_max = std::min(c.values().row(x).maxCoeff(), 1.0);
    q -= x_marginal[x] * log_units(row_max);
  }
  return q;
}

double q_pn(const RealVector& x_marginal, const OverlapMatrix& c,
            const SectorPartition& sectors) {
  if (x_marginal.size() != c.rows())
    throw std::invalid_argument("q_pn: marginal does not match overlap matrix");
  if (static_cast<Index>(sectors.x_sector.size()) != c.rows() ||
      static_cast<Index>(sectors.z_sector.size()) != c.cols())
    throw std::invalid_argument("q_pn: sector assignment does not match overlap matrix");
  for (Index x = 0; x < c.rows(); ++x)
    for (Index z = 0; z < c.cols(); ++z)
      if (sectors.x_sector[x] != sectors.z_sector[z] && c.values()(x, z) > 1e-12)
        throw std::invalid_argument("q_pn: bases do not preserve the sector structure");
  // max overlap and probability weight per sector
  std::map<int, double> sector_max;
  std::map<int, double> sector_weight;
  for (Index x = 0; x < c.rows(); ++x) {
    double row_max = 0.0;
    for (Index z = 0; z < c.cols(); ++z)
      if (sectors.z_sector[z] == sectors.x_sector[x])
        row_max = std::max(row_max, c.values()(x, z));
    auto [it, inserted] = sector_max.try_emplace(sectors.x_sector[x], row_max);
    if (!inserted) it->second = std::max(it->second, row_max);
    sector_weight[sectors.x_sector[x]] += x_marginal[x];
  }
  double q = 0.0;
  for (const auto& [sector, weight] : sector_weight) {
    if (weight <= tol::probability_clip) continue;
    const double m = sector_max.at(sector);
    if (m <= 0.0)
      throw std::invalid_argument("q_pn: sector without any overlap weight");
    q -= weight * log_units(std::min(m, 1.0));
  }
  return q;
}

double q_fsd(const JointDistribution& p_xx, const RealMatrix& p_z_given_b,
             const OverlapMatrix& c, double clip) {
  if (c.rows() != p_xx.table().rows())
    throw std::invalid_argument("q_fsd: overlap matrix does not match X outcomes");
  if (p_z_given_b.rows() != c.cols())
    throw std::invalid_argument("q_fsd: conditional table does not match Z outcomes");
  if (p_z_given_b.cols() != p_xx.table().cols())
    throw std::invalid_argument("q_fsd: conditional table does not match B outcomes");
  // w(x, x') = sum_z c(x, z) P(z | x')
  const RealMatrix w = c.values() * p_z_given_b;
  double q = 0.0;
  for (Index x2 = 0; x2 < p_xx.table().cols(); ++x2) {
    if (p_z_given_b.col(x2).sum() <= 0.0) continue;  // below-weight column, skipped
    for (Index x = 0; x < p_xx.table().rows(); ++x) {
      const double p = p_xx.table()(x, x2);
      if (p <= clip) continue;
      if (w(x, x2) <= 0.0)
        throw std::invalid_argument("q_fsd: joint and conditional tables are inconsistent");
      q -= p * log_units(std::min(w(x, x2), 1.0));
    }
  }
  return q;
}

double q_fsd(const JointDistribution& p_xx, const JointDistribution& p_zx,
             const OverlapMatrix& c, double clip) {
  if (p_xx.labels_b() != p_zx.labels_b())
    throw std::invalid_argument("q_fsd: B-side outcome labels disagree between tables");
  return q_fsd(p_xx, conditional_given_b(p_zx, clip), c, clip);
}

namespace {

BoundReport assemble_from_tables(const JointDistribution& p_xx,
                                 const JointDistribution& p_zz,
                                 const JointDistribution& p_zx, const OverlapMatrix& c,
                                 const std::optional<SectorPartition>& sectors,
                                 double clip) {
  BoundReport r;
  r.hxx = conditional_entropy(p_xx, clip);
  r.hzz = conditional_entropy(p_zz, clip);
  r.q_mu = q_mu(c);
  r.q_c = q_c(p_xx.marginal_a(), c, clip);
  r.q_fsd = q_fsd(p_xx, p_zx, c, clip);
  if (sectors) r.q_pn = q_pn(p_xx.marginal_a(), c, *sectors);
  const double entropies = r.hxx + r.hzz;
  r.bound_mu = r.q_mu - entropies;
  r.bound_c = r.q_c - entropies;
  r.bound_fsd = r.q_fsd - entropies;
  if (r.q_pn) r.bound_pn = *r.q_pn - entropies;
  return r;
}

}  // namespace

BoundReport assemble_report(const JointDistribution& p_xx, const JointDistribution& p_zz,
                            const JointDistribution& p_zx, const OverlapMatrix& c,
                            const std::optional<SectorPartition>& sectors, double clip) {
  if (p_zx.labels_a() != p_zz.labels_a())
    throw std::invalid_argument("assemble_report: Z outcome labels disagree between tables");
  if (p_xx.labels_b() != p_zx.labels_b())
    throw std::invalid_argument("assemble_report: B-side labels disagree between tables");
  return assemble_from_tables(p_xx, p_zz, p_zx, c, sectors, clip);
}

BoundReport assemble_report(const StateVector& psi, const BipartiteIndexer& indexer,
                            const MeasurementBasis& x_a, const MeasurementBasis& x_b,
                            const MeasurementBasis& z_a, const MeasurementBasis& z_b,
                            const std::optional<SectorPartition>& sectors,
                            std::optional<double> truth_override, double clip) {
  const JointDistribution p_xx = joint_distribution(psi, indexer, x_a, x_b);
  const JointDistribution p_zz = joint_distribution(psi, indexer, z_a, z_b);
  const JointDistribution p_zx = joint_distribution(psi, indexer, z_a, x_b);
  const OverlapMatrix c = overlap_matrix(x_a, z_a);
  BoundReport r = assemble_from_tables(p_xx, p_zz, p_zx, c, sectors, clip);
  if (truth_override)
    r.true_neg_hab = *truth_override;
  else
    r.true_neg_hab = coherent_information(StateVector(psi.amplitudes(), indexer));
  return r;
}

BoundReport assemble_report(const DensityMatrix& rho, const BipartiteIndexer& indexer,
                            const MeasurementBasis& x_a, const MeasurementBasis& x_b,
                            const MeasurementBasis& z_a, const MeasurementBasis& z_b,
                            const std::optional<SectorPartition>& sectors,
                            std::optional<double> truth_override, double clip) {
  const JointDistribution p_xx = joint_distribution(rho, indexer, x_a, x_b);
  const JointDistribution p_zz = joint_distribution(rho, indexer, z_a, z_b);
  const JointDistribution p_zx = joint_distribution(rho, indexer, z_a, x_b);
  const OverlapMatrix c = overlap_matrix(x_a, z_a);
  BoundReport r = assemble_from_tables(p_xx, p_zz, p_zx, c, sectors, clip);
  if (truth_override)
    r.true_neg_hab = *truth_override;
  else
    r.true_neg_hab = coherent_information(rho, indexer);
  return r;
}

}  // namespace entbound
