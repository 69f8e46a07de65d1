#include "entbound/optimize.hpp"

#include "entbound/parallel.hpp"
#include "entbound/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace entbound::optimize {

namespace {

struct StartResult {
  RealVector best_point;
  double best_value = -std::numeric_limits<double>::infinity();
  int evaluations = 0;
  bool converged = false;
  std::vector<TraceEntry> trace;
};

RealVector clamp_to_box(RealVector x, const std::vector<std::pair<double, double>>& box) {
  for (Index i = 0; i < x.size(); ++i)
    x[i] = std::clamp(x[i], box[i].first, box[i].second);
  return x;
}

// Standard Nelder-Mead on -objective, evaluations clamped into the box. The
// incumbent tracks every evaluated point, so the reported best is monotone in
// the budget.
StartResult nelder_mead(const Objective& objective, const Options& options,
                        const RealVector& start, int budget, bool record_trace) {
  const Index dim = start.size();
  StartResult result;
  auto evaluate = [&](const RealVector& raw) {
    const RealVector x = clamp_to_box(raw, options.box);
    const double value = objective(x);
    if (!std::isfinite(value))
      throw std::runtime_error("optimize: objective returned a non-finite value");
    ++result.evaluations;
    if (record_trace) result.trace.push_back({0, 0, x, value});
    if (value > result.best_value) {
      result.best_value = value;
      result.best_point = x;
    }
    return -value;
  };

  std::vector<RealVector> simplex;
  std::vector<double> f;
  simplex.reserve(dim + 1);
  simplex.push_back(clamp_to_box(start, options.box));
  for (Index i = 0; i < dim; ++i) {
    RealVector v = simplex[0];
    const double span = options.box[i].second - options.box[i].first;
    double step = 0.1 * span;
    if (v[i] + step > options.box[i].second) step = -step;
    v[i] += step;
    simplex.push_back(clamp_to_box(v, options.box));
  }
  f.reserve(dim + 1);
  for (const auto& v : simplex) {
    if (result.evaluations >= budget) return result;
    f.push_back(evaluate(v));
  }

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  while (result.evaluations < budget) {
    std::vector<Index> order(simplex.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Index>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return f[a] < f[b]; });
    std::vector<RealVector> sorted_simplex;
    std::vector<double> sorted_f;
    for (Index i : order) {
      sorted_simplex.push_back(simplex[i]);
      sorted_f.push_back(f[i]);
    }
    simplex = std::move(sorted_simplex);
    f = std::move(sorted_f);

    if (f.back() - f.front() <= options.tolerance * (1.0 + std::abs(f.front()))) {
      result.converged = true;
      return result;
    }

    RealVector centroid = RealVector::Zero(dim);
    for (std::size_t i = 0; i + 1 < simplex.size(); ++i) centroid += simplex[i];
    centroid /= static_cast<double>(dim);

    const RealVector reflected = centroid + alpha * (centroid - simplex.back());
    const double f_reflected = evaluate(reflected);
    if (f_reflected < f.front()) {
      if (result.evaluations >= budget) return result;
      const RealVector expanded = centroid + gamma * (reflected - centroid);
      const double f_expanded = evaluate(expanded);
      if (f_expanded < f_reflected) {
        simplex.back() = expanded;
        f.back() = f_expanded;
      } else {
        simplex.back() = reflected;
        f.back() = f_reflected;
      }
      continue;
    }
    if (f_reflected < f[f.size() - 2]) {
      simplex.back() = reflected;
      f.back() = f_reflected;
      continue;
    }
    if (result.evaluations >= budget) return result;
    const RealVector contracted = centroid + rho * (simplex.back() - centroid);
    const double f_contracted = evaluate(contracted);
    if (f_contracted < f.back()) {
      simplex.back() = contracted;
      f.back() = f_contracted;
      continue;
    }
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      if (result.evaluations >= budget) return result;
      simplex[i] = simplex[0] + sigma * (simplex[i] - simplex[0]);
      f[i] = evaluate(simplex[i]);
    }
  }
  return result;
}

}  // namespace

Result maximize(const Objective& objective, const Options& options) {
  const Index dim = static_cast<Index>(options.box.size());
  if (dim < 1) throw std::invalid_argument("optimize: empty box");
  for (const auto& [lo, hi] : options.box)
    if (!(lo < hi)) throw std::invalid_argument("optimize: box interval is empty");
  if (options.max_evaluations < 1)
    throw std::invalid_argument("optimize: evaluation budget must be positive");
  if (options.restarts < 0)
    throw std::invalid_argument("optimize: negative restart count");
  if (!(options.tolerance > 0.0))
    throw std::invalid_argument("optimize: tolerance must be positive");
  for (const auto& w : options.warm_starts)
    if (w.size() != dim)
      throw std::invalid_argument("optimize: warm start dimension mismatch");

  std::vector<RealVector> starts = options.warm_starts;
  const Rng base(options.seed);
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng = base.fork(static_cast<std::uint64_t>(r));
    RealVector v(dim);
    for (Index i = 0; i < dim; ++i)
      v[i] = rng.uniform(options.box[i].first, options.box[i].second);
    starts.push_back(std::move(v));
  }
  if (starts.empty()) throw std::invalid_argument("optimize: no starts configured");

  const int per_start =
      std::max<int>(2 * static_cast<int>(dim) + 4,
                    options.max_evaluations / static_cast<int>(starts.size()));
  std::vector<StartResult> results(starts.size());
  parallel_for(starts.size(), options.threads, [&](std::size_t s) {
    results[s] = nelder_mead(objective, options, starts[s],
                             std::min(per_start, options.max_evaluations),
                             options.record_trace);
  });

  Result merged;
  merged.best_value = -std::numeric_limits<double>::infinity();
  merged.converged = true;
  int counter = 0;
  for (std::size_t s = 0; s < results.size(); ++s) {
    merged.evaluations += results[s].evaluations;
    merged.converged = merged.converged && results[s].converged;
    if (results[s].best_value > merged.best_value) {
      merged.best_value = results[s].best_value;
      merged.best_point = results[s].best_point;
    }
    for (auto& entry : results[s].trace) {
      entry.start = static_cast<int>(s);
      entry.evaluation = counter++;
      merged.trace.push_back(std::move(entry));
    }
  }
  return merged;
}

}  // namespace entbound::optimize
