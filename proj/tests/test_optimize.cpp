#include "doctest.h"

#include "entbound/lattice.hpp"
#include "entbound/optimize.hpp"
#include "entbound/spectral.hpp"
#include "entbound/spin1.hpp"
#include "entbound/types.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace entbound;
using optimize::Options;
using optimize::Result;

namespace {

Options box_options(int dim, double lo, double hi) {
  Options options;
  options.box.assign(dim, {lo, hi});
  return options;
}

}  // namespace

TEST_CASE("recovers the maximum of a smooth quadratic") {
  RealVector target(3);
  target << 0.3, -1.2, 0.7;
  Options options = box_options(3, -2.0, 2.0);
  options.max_evaluations = 2000;
  const Result result = optimize::maximize(
      [&](const RealVector& p) { return -(p - target).squaredNorm(); }, options);
  CHECK(result.converged);
  CHECK((result.best_point - target).norm() < 1e-4);
  CHECK(result.best_value == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("best value dominates every recorded evaluation") {
  Options options = box_options(2, -3.0, 3.0);
  options.record_trace = true;
  options.max_evaluations = 400;
  const Result result = optimize::maximize(
      [](const RealVector& p) {
        return std::sin(3.0 * p[0]) * std::cos(2.0 * p[1]) - 0.1 * p.squaredNorm();
      },
      options);
  REQUIRE_FALSE(result.trace.empty());
  double best_seen = result.trace.front().value;
  for (const auto& entry : result.trace) {
    CHECK(entry.value <= result.best_value);
    best_seen = std::max(best_seen, entry.value);
    CHECK(entry.point.size() == 2);
    CHECK(entry.point[0] >= -3.0);
    CHECK(entry.point[0] <= 3.0);
  }
  CHECK(best_seen == result.best_value);
  CHECK(result.evaluations == static_cast<int>(result.trace.size()));
}

TEST_CASE("identical seeds give identical runs") {
  Options options = box_options(2, -1.0, 1.0);
  options.seed = 42;
  options.record_trace = true;
  options.max_evaluations = 300;
  const auto objective = [](const RealVector& p) {
    return -std::pow(p[0] - 0.2, 2.0) - std::pow(p[1] + 0.4, 4.0);
  };
  const Result first = optimize::maximize(objective, options);
  const Result second = optimize::maximize(objective, options);
  CHECK(first.best_value == second.best_value);
  CHECK((first.best_point - second.best_point).cwiseAbs().maxCoeff() == 0.0);
  CHECK(first.evaluations == second.evaluations);
  REQUIRE(first.trace.size() == second.trace.size());
  for (std::size_t i = 0; i < first.trace.size(); ++i)
    CHECK(first.trace[i].value == second.trace[i].value);
}

TEST_CASE("warm starts are never undercut") {
  RealVector warm(2);
  warm << 0.9, -0.9;  // already the optimum of the objective below
  Options options = box_options(2, -1.0, 1.0);
  options.warm_starts = {warm};
  options.max_evaluations = 40;  // tiny budget: random restarts find nothing better
  options.restarts = 1;
  const auto objective = [&](const RealVector& p) {
    return -(p - warm).squaredNorm();
  };
  const Result result = optimize::maximize(objective, options);
  CHECK(result.best_value >= objective(warm));
}

TEST_CASE("exhausted budgets are flagged as not converged") {
  Options options = box_options(4, -5.0, 5.0);
  options.max_evaluations = 30;
  options.tolerance = 1e-15;
  const Result result = optimize::maximize(
      [](const RealVector& p) {
        return std::sin(10.0 * p[0]) + std::sin(9.0 * p[1] + 1.0) + p[2] - p[3] * p[3];
      },
      options);
  CHECK_FALSE(result.converged);
  CHECK(result.evaluations >= 30);
}

TEST_CASE("option validation") {
  Options empty;
  CHECK_THROWS_AS(optimize::maximize([](const RealVector&) { return 0.0; }, empty),
                  std::invalid_argument);

  Options bad_box = box_options(2, 1.0, -1.0);
  CHECK_THROWS_AS(optimize::maximize([](const RealVector&) { return 0.0; }, bad_box),
                  std::invalid_argument);

  Options bad_warm = box_options(2, -1.0, 1.0);
  RealVector warm(3);
  warm.setZero();
  bad_warm.warm_starts = {warm};
  CHECK_THROWS_AS(optimize::maximize([](const RealVector&) { return 0.0; }, bad_warm),
                  std::invalid_argument);

  Options no_budget = box_options(1, 0.0, 1.0);
  no_budget.max_evaluations = 0;
  CHECK_THROWS_AS(optimize::maximize([](const RealVector&) { return 0.0; }, no_budget),
                  std::invalid_argument);

  Options non_finite = box_options(1, 0.0, 1.0);
  CHECK_THROWS_AS(optimize::maximize(
                      [](const RealVector&) { return std::nan(""); }, non_finite),
                  std::runtime_error);
}

TEST_CASE("refines the lattice peak to the analytic MUB point") {
  // Very strong attraction makes the ground state essentially Bell; the
  // detected bound at the refined peak then sits within a millibit of 1.
  const lattice::LatticeModel model{2, 1.0, -1000.0, false};
  const auto ground_pair = ground_state(lattice::build_hubbard(model));
  const StateVector ground(ground_pair.second.amplitudes(), BipartiteIndexer(2, 2));

  Options options = box_options(1, 0.6, 1.0);
  options.max_evaluations = 250;
  RealVector warm(1);
  warm << 0.75;
  options.warm_starts = {warm};
  const Result result = optimize::maximize(
      [&](const RealVector& p) {
        return lattice::report_at(model, ground, p[0]).bound_fsd;
      },
      options);
  CHECK(result.best_value == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(result.best_point[0] == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-2));
}

TEST_CASE("tilt optimization beats or matches the Fourier baseline") {
  const spin1::Spin1Model model{6, -1.0, -(-1.0) * (6 - 0.5)};
  const spin1::SplitState split =
      spin1::beam_split(spin1::quench_state(model, 0.12));
  const spin1::TiltParams fourier = spin1::fourier_tilt();
  const double baseline = spin1::split_report(split, fourier).bound_fsd;

  RealVector warm(11);
  for (int i = 0; i < 8; ++i) warm[i] = fourier.coefficients[i];
  for (int i = 0; i < 3; ++i) warm[8 + i] = fourier.phases[i];
  Options options = box_options(11, -std::numbers::pi, std::numbers::pi);
  options.max_evaluations = 250;
  options.restarts = 1;
  options.warm_starts = {warm};
  const Result result = optimize::maximize(
      [&](const RealVector& p) {
        spin1::TiltParams tilt;
        for (int i = 0; i < 8; ++i) tilt.coefficients[i] = p[i];
        for (int i = 0; i < 3; ++i) tilt.phases[i] = p[8 + i];
        return spin1::split_report(split, tilt).bound_fsd;
      },
      options);
  CHECK(result.best_value >= baseline - 1e-12);
}
