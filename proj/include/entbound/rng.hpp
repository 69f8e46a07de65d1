#pragma once

#include "entbound/types.hpp"

#include <cstdint>
#include <random>

namespace entbound {

// Deterministic random source. All distributions are derived from raw 64-bit
// draws (std:: distribution objects are implementation-defined and would break
// cross-platform reproducibility of seeded runs).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64();

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();
  Complex gaussian_complex();  // independent N(0,1) real and imaginary parts

  // Independent child stream; fork(k) depends only on (seed, k).
  Rng fork(std::uint64_t stream) const;

  Vector random_pure_amplitudes(Index dim);
  Matrix random_unitary(Index dim);  // Haar via Ginibre QR with phase fix
  Matrix random_density_entries(Index dim, Index rank);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace entbound
