#pragma once

#include "entbound/bounds.hpp"
#include "entbound/measure.hpp"
#include "entbound/types.hpp"

#include <vector>

namespace entbound::lattice {

// Two distinguishable particles A and B hopping on a 1d chain of L sites,
// with an on-site interaction U whenever they meet:
//   H = -J sum_p sum_i (a+_{p,i} a_{p,i+1} + h.c.) + U sum_i n_{A,i} n_{B,i}
// on the L x L product basis |i_A, i_B>, k = i_A * L + i_B.
struct LatticeModel {
  int sites = 2;
  double tunneling = 1.0;      // J
  double interaction = 0.0;    // U
  bool periodic = false;
};

// Single-particle hopping matrix (-J on neighbours) used both by the
// Hamiltonian and by the tilted measurement basis.
RealMatrix hopping_matrix(const LatticeModel& model);

HermitianOperator build_hubbard(const LatticeModel& model);

// Site-resolved measurement, labels "site 1".."site L".
MeasurementBasis site_basis(int sites);

// Detection after free flight: sites are counted after evolving with the
// hopping part alone for time t, i.e. the basis states are exp(-i h t)^dag
// applied to site states. t must be nonnegative.
MeasurementBasis tilted_site_basis(const LatticeModel& model, double time);

// Bound reports along a grid of tilt times, for the ground state of the
// interacting chain. X is the bare site basis on both particles, Z the tilted
// one on both. Rows come back in grid order regardless of thread count.
std::vector<BoundReport> sweep(const LatticeModel& model, const std::vector<double>& times,
                               unsigned threads = 1);

// Single report at one tilt time (used by sweeps and by peak refinement).
BoundReport report_at(const LatticeModel& model, const StateVector& ground,
                      double time);

}  // namespace entbound::lattice
