#pragma once

#include "entbound/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace entbound::verify {

// Randomized property suite: MUB tightness at fixed dimensions, bound
// validity and the factor hierarchy on random states and bases, Schmidt
// symmetry on pure states, and sector-resolved checks on split spin-1
// instances. Everything is seeded and reruns bit-identically.
struct Options {
  int trials = 1000;
  std::vector<int> dims = {2, 3, 4};
  std::uint64_t seed = 1;
  unsigned threads = 1;
  // Test hook: shifts q_fsd (and bound_fsd) before checking, so the suite can
  // demonstrate that it actually fails on wrong values.
  double corrupt_qfsd = 0.0;
};

struct Violation {
  std::string property;
  std::string detail;
  long trial = -1;  // -1 for the fixed (non-random) checks
  bool pure = true;
  // state is either a density matrix or a column of pure-state amplitudes
  Matrix state;
  Matrix basis_xa, basis_xb, basis_za, basis_zb;
};

struct Outcome {
  int fixed_checks = 0;
  int random_trials = 0;
  int sector_instances = 0;
  std::vector<Violation> violations;  // deterministic order
  std::vector<std::string> summary;

  bool passed() const { return violations.empty(); }
};

Outcome run_suite(const Options& options);

// Self-describing text form: "matrix NAME ROWS COLS" followed by row-major
// "re,im" lines per entry.
void write_violation(std::ostream& out, const Violation& violation);

}  // namespace entbound::verify
