#pragma once

#include "entbound/measure.hpp"
#include "entbound/types.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace entbound {

// Sector assignment of measurement outcomes (e.g. particle number per
// outcome). Used by the sector-resolved complementarity factor, which is only
// valid when the overlap matrix is block diagonal over these sectors.
struct SectorPartition {
  std::vector<int> x_sector;
  std::vector<int> z_sector;
};

// Basis-only factor: -log max_(x,z) c(x,z). State independent.
double q_mu(const OverlapMatrix& c);

// Keeps the X marginal: -sum_x P(x) log max_z c(x,z).
double q_c(const RealVector& x_marginal, const OverlapMatrix& c,
           double clip = tol::probability_clip);

// Sector-resolved variant of q_mu, weighted by the measured sector
// probabilities. Throws if c couples different sectors.
double q_pn(const RealVector& x_marginal, const OverlapMatrix& c,
            const SectorPartition& sectors);

// Full statistics factor
//   -sum_(x,x') P_XX'(x,x') log sum_z c(x,z) P_Z|X'(z|x').
// p_z_given_b has one column per B outcome x' (see conditional_given_b).
double q_fsd(const JointDistribution& p_xx, const RealMatrix& p_z_given_b,
             const OverlapMatrix& c, double clip = tol::probability_clip);

// Convenience overload taking the measured joint Z vs X' table; checks that
// the B-side outcome labels agree before conditioning.
double q_fsd(const JointDistribution& p_xx, const JointDistribution& p_zx,
             const OverlapMatrix& c, double clip = tol::probability_clip);

// One evaluated setting: both conditional entropies, the four factors, the
// resulting bounds (factor minus both entropies, reported even when
// negative), and the exact coherent information when a full state was
// available. `meta` carries model parameters for output tables.
struct BoundReport {
  double hxx = 0.0;
  double hzz = 0.0;
  double q_mu = 0.0;
  std::optional<double> q_pn;
  double q_c = 0.0;
  double q_fsd = 0.0;
  double bound_mu = 0.0;
  std::optional<double> bound_pn;
  double bound_c = 0.0;
  double bound_fsd = 0.0;
  std::optional<double> true_neg_hab;
  std::vector<std::pair<std::string, std::string>> meta;
};

// Entry point for externally supplied tables: nothing here needs a state.
BoundReport assemble_report(const JointDistribution& p_xx, const JointDistribution& p_zz,
                            const JointDistribution& p_zx, const OverlapMatrix& c,
                            const std::optional<SectorPartition>& sectors = std::nullopt,
                            double clip = tol::probability_clip);

BoundReport assemble_report(const StateVector& psi, const BipartiteIndexer& indexer,
                            const MeasurementBasis& x_a, const MeasurementBasis& x_b,
                            const MeasurementBasis& z_a, const MeasurementBasis& z_b,
                            const std::optional<SectorPartition>& sectors = std::nullopt,
                            std::optional<double> truth_override = std::nullopt,
                            double clip = tol::probability_clip);

BoundReport assemble_report(const DensityMatrix& rho, const BipartiteIndexer& indexer,
                            const MeasurementBasis& x_a, const MeasurementBasis& x_b,
                            const MeasurementBasis& z_a, const MeasurementBasis& z_b,
                            const std::optional<SectorPartition>& sectors = std::nullopt,
                            std::optional<double> truth_override = std::nullopt,
                            double clip = tol::probability_clip);

}  // namespace entbound
