#pragma once

#include "entbound/types.hpp"

namespace entbound {

// All entropies and complementarity factors use one global unit. Bits are the
// default; switching to nats rescales every quantity consistently, including
// the bounds, so comparisons remain valid.
enum class LogBase { two, e };

void set_entropy_log_base(LogBase base);
LogBase entropy_log_base();
const char* log_base_name(LogBase base);

// log in the currently selected unit; x must be positive.
double log_units(double x);

enum class Side { A, B };

// -sum_i p_i log p_i. Entries at or below `clip` contribute zero.
double shannon_entropy(const RealVector& p, double clip = tol::probability_clip);

// Eigenvalues of a density matrix, ascending. Values in [-eigenvalue_clip, 0)
// are clipped to 0; anything more negative throws std::invalid_argument.
RealVector density_spectrum(const DensityMatrix& rho);

double von_neumann_entropy(const DensityMatrix& rho);

DensityMatrix partial_trace(const DensityMatrix& rho, const BipartiteIndexer& indexer,
                            Side keep);

// Coherent information -H(A|B) = H(rho_B) - H(rho_AB).
double coherent_information(const DensityMatrix& rho_ab, const BipartiteIndexer& indexer);

// Pure-state shortcut: H(rho_AB) = 0, and rho_B comes from the coefficient
// matrix. Requires the state to carry a split.
double coherent_information(const StateVector& psi);

}  // namespace entbound
