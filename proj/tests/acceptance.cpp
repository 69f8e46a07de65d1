// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line with
// a short detail; the exit code is 0 only if every criterion passes.

#include "entbound/bounds.hpp"
#include "entbound/entropy.hpp"
#include "entbound/fock.hpp"
#include "entbound/lattice.hpp"
#include "entbound/measure.hpp"
#include "entbound/optimize.hpp"
#include "entbound/rng.hpp"
#include "entbound/run.hpp"
#include "entbound/spectral.hpp"
#include "entbound/spin1.hpp"
#include "entbound/types.hpp"
#include "entbound/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace entbound;
namespace fs = std::filesystem;

namespace {

int criteria_passed = 0;
int criteria_total = 0;

struct Outcome {
  bool ok = false;
  std::string detail;
};

void run_criterion(const char* name, const std::function<Outcome()>& body) {
  ++criteria_total;
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.ok = false;
    outcome.detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (outcome.ok) ++criteria_passed;
  std::printf("%s [%2d] %-52s %s (%.1f s)\n", outcome.ok ? "PASS" : "FAIL",
              criteria_total, name, outcome.detail.c_str(), seconds);
  std::fflush(stdout);
}

std::string fmt(double value, int precision = 4) {
  std::ostringstream out;
  out << std::setprecision(precision) << value;
  return out.str();
}

StateVector maximally_entangled(Index d) {
  Vector amps = Vector::Zero(d * d);
  for (Index k = 0; k < d; ++k) amps[k * d + k] = 1.0 / std::sqrt(static_cast<double>(d));
  return StateVector(std::move(amps), BipartiteIndexer(d, d));
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool matches(const std::string& property, const char* prefix) {
  return property.rfind(prefix, 0) == 0;
}

}  // namespace

int main() {
  const verify::Outcome suite = verify::run_suite({1000, {2, 3, 4}, 1, 1, 0.0});

  run_criterion("MUB detection is tight on maximally entangled states", [] {
    double worst = 0.0;
    for (const Index d : {2, 3, 4, 5, 8}) {
      const MeasurementBasis x = MeasurementBasis::computational(d);
      const MeasurementBasis z = fourier_basis(d);
      const BoundReport r =
          assemble_report(maximally_entangled(d), BipartiteIndexer(d, d), x, x, z, z);
      const double target = std::log2(static_cast<double>(d));
      worst = std::max({worst, std::abs(r.hxx), std::abs(r.hzz),
                        std::abs(r.bound_fsd - target),
                        std::abs(r.true_neg_hab.value() - target)});
    }
    return Outcome{worst <= 1e-8, "max deviation " + fmt(worst, 2)};
  });

  run_criterion("bounds never exceed the coherent information", [&suite] {
    int bad = 0;
    for (const auto& v : suite.violations)
      if (matches(v.property, "theorem") || matches(v.property, "uncertainty") ||
          matches(v.property, "mub_tightness"))
        ++bad;
    return Outcome{bad == 0, std::to_string(suite.random_trials) + " random trials, " +
                                 std::to_string(suite.sector_instances) +
                                 " sector instances, " + std::to_string(bad) +
                                 " violations"};
  });

  run_criterion("complementarity factors respect the hierarchy", [&suite] {
    int bad = 0;
    for (const auto& v : suite.violations)
      if (matches(v.property, "hierarchy") || matches(v.property, "schmidt") ||
          matches(v.property, "sector"))
        ++bad;
    return Outcome{bad == 0 && suite.passed(),
                   std::to_string(suite.violations.size()) + " total violations"};
  });

  run_criterion("two-site pair detection reaches the known optimum", [] {
    const lattice::LatticeModel model{2, 1.0, -100.0, false};
    const std::vector<double> times = cli::grid_points({0.0, 0.8, 0.01});
    const auto reports = lattice::sweep(model, times, 2);
    std::size_t best = 0;
    for (std::size_t i = 1; i < reports.size(); ++i)
      if (reports[i].bound_fsd > reports[best].bound_fsd) best = i;
    const double truth = reports[best].true_neg_hab.value();

    const auto ground_pair = ground_state(lattice::build_hubbard(model));
    const StateVector ground(ground_pair.second.amplitudes(), BipartiteIndexer(2, 2));
    optimize::Options opt;
    opt.max_evaluations = 200;
    opt.box = {{std::max(0.0, times[best] - 0.1), times[best] + 0.1}};
    RealVector warm(1);
    warm[0] = times[best];
    opt.warm_starts = {warm};
    const optimize::Result refined = optimize::maximize(
        [&](const RealVector& p) { return lattice::report_at(model, ground, p[0]).bound_fsd; },
        opt);

    const double miss = std::abs(refined.best_point[0] - std::numbers::pi / 4.0);
    const bool ok = refined.best_value >= 0.98 * truth && miss <= 0.02;
    return Outcome{ok, "bound " + fmt(refined.best_value) + " vs truth " + fmt(truth) +
                           ", peak off by " + fmt(miss, 2)};
  });

  run_criterion("longer chains keep a detectable positive bound", [] {
    std::string detail;
    bool ok = true;
    for (const int sites : {4, 8}) {
      const auto reports =
          lattice::sweep({sites, 1.0, -100.0, false}, cli::grid_points({0.0, 3.0, 0.05}), 2);
      std::size_t best = 0;
      for (std::size_t i = 0; i < reports.size(); ++i) {
        if (reports[i].bound_fsd > reports[best].bound_fsd) best = i;
        if (reports[i].q_mu > reports[i].q_fsd + 1e-9 ||
            reports[i].bound_mu > reports[i].bound_fsd + 1e-9)
          ok = false;
      }
      if (reports[best].bound_fsd <= 0.1) ok = false;
      if (!detail.empty()) detail += "; ";
      detail += "L=" + std::to_string(sites) + " peak " + fmt(reports[best].bound_fsd) +
                " at tJ " + reports[best].meta[2].second;
    }
    return Outcome{ok, detail};
  });

  run_criterion("number conservation nulls the basis-only factor", [] {
    Rng rng(41);
    double worst = 0.0;
    for (const int n : {2, 3, 4}) {
      const spin1::SplitState split =
          spin1::beam_split(spin1::quench_state({n, -1.0, 2.0 * n - 0.5}, 0.3));
      for (int rep = 0; rep < 3; ++rep) {
        spin1::TiltParams tilt;
        for (auto& c : tilt.coefficients)
          c = rng.uniform(-std::numbers::pi, std::numbers::pi);
        for (auto& p : tilt.phases) p = rng.uniform(-std::numbers::pi, std::numbers::pi);
        worst = std::max(worst, std::abs(spin1::split_report(split, tilt).q_mu));
      }
    }
    return Outcome{worst <= 1e-12, "max |q_mu| = " + fmt(worst, 2)};
  });

  run_criterion("quench detection windows open where expected", [] {
    const spin1::Spin1Model model{10, -1.0, 9.5};
    bool ok = true;
    std::string detail;

    const std::vector<double> imprint_times = cli::grid_points({0.0, 0.3, 0.02});
    const std::array<double, 3> pi_phases{0.095 * std::numbers::pi,
                                          -0.495 * std::numbers::pi,
                                          0.400 * std::numbers::pi};
    const auto imprinted =
        spin1::quench_sweep(model, imprint_times, spin1::fourier_tilt(pi_phases), 2);
    bool window_hit = false;
    double imprint_peak = 0.0;
    for (std::size_t i = 0; i < imprinted.size(); ++i) {
      if (imprinted[i].bound_fsd > imprinted[i].true_neg_hab.value() + 1e-7) ok = false;
      if (imprint_times[i] >= 0.095 && imprint_times[i] <= 0.165 &&
          imprinted[i].bound_fsd > 0.0)
        window_hit = true;
      imprint_peak = std::max(imprint_peak, imprinted[i].bound_fsd);
    }
    ok = ok && window_hit;
    detail += "imprinted peak " + fmt(imprint_peak);

    const std::vector<double> plain_times = cli::grid_points({0.0, 1.0, 0.05});
    const auto plain = spin1::quench_sweep(model, plain_times, spin1::fourier_tilt(), 2);
    bool late_hit = false;
    double plain_peak = 0.0;
    for (std::size_t i = 0; i < plain.size(); ++i) {
      if (plain[i].bound_fsd > plain[i].true_neg_hab.value() + 1e-7) ok = false;
      if (plain_times[i] >= 0.19 && plain[i].bound_fsd > 0.0) late_hit = true;
      plain_peak = std::max(plain_peak, plain[i].bound_fsd);
    }
    ok = ok && late_hit;
    detail += ", plain peak " + fmt(plain_peak);
    return Outcome{ok, detail};
  });

  run_criterion("twin-Fock ground state is detected at half strength", [] {
    const spin1::Spin1Model model{10, -1.0, -5.0 * spin1::critical_zeeman(10, -1.0)};
    const StateVector ground = spin1::subspace_ground_state(model).second;
    const double overlap =
        std::norm(ground.amplitudes()[FockBasis(3, 10).index_of({5, 0, 5})]);
    const BoundReport r =
        spin1::split_report(spin1::beam_split(ground), spin1::fourier_tilt());
    const double truth = r.true_neg_hab.value();
    const bool ok = overlap > 0.99 && r.bound_fsd >= 0.5 * truth;
    return Outcome{ok, "overlap " + fmt(overlap) + ", bound " + fmt(r.bound_fsd) +
                           " vs truth " + fmt(truth)};
  });

  run_criterion("detected entanglement scales logarithmically with N", [] {
    const spin1::ScalingResult scaling = spin1::twin_fock_scaling(
        {4, 6, 8, 10, 12, 14, 16}, -5.0, -1.0, spin1::fourier_tilt(), 2);
    const double a_bound = scaling.bound_fit.slope;
    const double a_truth = scaling.truth_fit.slope;
    const bool ok =
        a_bound >= 0.4 && a_bound <= 0.8 && a_truth >= 0.4 && a_truth <= 0.6;
    return Outcome{ok, "bound slope " + fmt(a_bound) + ", truth slope " + fmt(a_truth)};
  });

  run_criterion("seeded CLI runs reproduce byte-identical tables", [] {
    const fs::path dir = fs::temp_directory_path() / "entbound_acceptance";
    fs::create_directories(dir);
    const std::string cli = ENTBOUND_CLI_PATH;
    const std::vector<std::pair<std::string, std::string>> cases{
        {"lattice --L 2 --U-over-J -100 --t-grid 0:0.1:0.02", "lat.csv"},
        {"spin1-quench --N 4 --g -1 --t-grid 0:0.2:0.05 --phases-pi 0.095,-0.495,0.4",
         "quench.csv"}};
    for (const auto& [args, name] : cases) {
      const fs::path out = dir / name;
      const fs::path keep = dir / (name + ".first");
      const std::string command = cli + " " + args + " --seed 5 --threads 2 --out " +
                                  out.string() + " >/dev/null 2>&1";
      if (std::system(command.c_str()) != 0)
        return Outcome{false, "CLI run failed: " + args};
      fs::copy_file(out, keep, fs::copy_options::overwrite_existing);
      if (std::system(command.c_str()) != 0)
        return Outcome{false, "CLI rerun failed: " + args};
      if (slurp(out) != slurp(keep) || slurp(out).empty())
        return Outcome{false, "rerun differs for " + name};
    }
    return Outcome{true, "lattice and quench reruns identical"};
  });

  std::printf("acceptance: %d/%d passed\n", criteria_passed, criteria_total);
  return criteria_passed == criteria_total ? 0 : 1;
}
