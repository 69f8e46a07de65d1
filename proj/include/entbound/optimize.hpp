#pragma once

#include "entbound/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace entbound::optimize {

// Box-constrained Nelder-Mead maximization with seeded random restarts.
// Derivative-free on purpose: the objectives here (bounds as a function of
// measurement-basis parameters) are cheap but not smooth enough near clips to
// trust finite differences.

struct Options {
  int max_evaluations = 4000;     // total budget across all starts
  int restarts = 3;               // random starts in addition to warm starts
  double tolerance = 1e-9;        // simplex value-spread stopping criterion
  std::uint64_t seed = 1;
  unsigned threads = 1;           // starts run independently; results merge by index
  bool record_trace = false;
  std::vector<std::pair<double, double>> box;  // per-coordinate [lo, hi]
  std::vector<RealVector> warm_starts;         // evaluated before random restarts
};

struct TraceEntry {
  int start = 0;       // which restart produced the evaluation
  int evaluation = 0;  // global running count, in deterministic merge order
  RealVector point;
  double value = 0.0;
};

struct Result {
  RealVector best_point;
  double best_value = 0.0;
  int evaluations = 0;
  bool converged = false;  // every start stopped on tolerance, not budget
  std::vector<TraceEntry> trace;
};

using Objective = std::function<double(const RealVector&)>;

Result maximize(const Objective& objective, const Options& options);

}  // namespace entbound::optimize
