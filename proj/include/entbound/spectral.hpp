#pragma once

#include "entbound/types.hpp"

#include <utility>

namespace entbound {

// Below this dimension everything goes through dense eigensolvers; above it,
// ground states use Lanczos and time evolution uses Krylov propagation.
inline constexpr Index dense_spectral_limit = 4096;

// Lowest eigenpair. The returned state carries no split; attach one with
// StateVector if needed. Throws std::runtime_error when the residual check
// ||H psi - E psi|| <= 1e-8 * max(1, ||H||) fails.
std::pair<double, StateVector> ground_state(const HermitianOperator& op);

// exp(-i H t) |psi>. Norm is preserved by construction and re-normalized
// against rounding drift.
StateVector evolve(const HermitianOperator& op, const StateVector& psi, double time);

namespace detail {

std::pair<double, Vector> lanczos_ground_state(const HermitianOperator& op,
                                               int max_iterations = 400,
                                               double tolerance = 1e-10);

Vector krylov_evolve(const HermitianOperator& op, const Vector& v, double time,
                     double tolerance = 1e-10);

}  // namespace detail

}  // namespace entbound
