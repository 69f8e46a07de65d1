#include "entbound/run.hpp"
#include "entbound/version.hpp"

#include <CLI11.hpp>

#include <array>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct RawTilt {
  std::string phases_pi;
  std::string coefficients;
};

void apply_tilt(const RawTilt& raw, std::array<double, 3>& phases_pi,
                std::optional<std::array<double, 8>>& coefficients) {
  if (!raw.phases_pi.empty()) {
    const auto values = entbound::cli::parse_double_list(raw.phases_pi, 3);
    std::copy(values.begin(), values.end(), phases_pi.begin());
  }
  if (!raw.coefficients.empty()) {
    const auto values = entbound::cli::parse_double_list(raw.coefficients, 8);
    std::array<double, 8> c{};
    std::copy(values.begin(), values.end(), c.begin());
    coefficients = c;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace entbound::cli;

  CLI::App app{"Entanglement lower bounds from two-basis measurement statistics"};
  app.set_version_flag("--version", entbound::version_string);
  app.set_config("--config", "", "read options from a key = value file");
  app.fallthrough();
  app.require_subcommand(1);

  CommonOptions common;
  app.add_option("--out", common.out_path, "output CSV path");
  app.add_option("--seed", common.seed, "random seed");
  app.add_option("--threads", common.threads, "worker threads (0 = auto)");
  app.add_option("--log-base", common.log_base, "entropy unit")
      ->check(CLI::IsMember({"2", "e"}));

  LatticeOptions lattice;
  std::string lattice_grid;
  auto* cmd_lattice = app.add_subcommand("lattice", "two particles on a chain");
  cmd_lattice->add_option("--L", lattice.sites, "number of sites")->check(CLI::Range(2, 64));
  cmd_lattice->add_option("--U-over-J", lattice.u_over_j, "interaction in tunneling units");
  cmd_lattice->add_option("--J", lattice.tunneling, "tunneling rate");
  cmd_lattice->add_option("--t-grid", lattice_grid, "tilt times start:stop:step");
  cmd_lattice->add_flag("--periodic", lattice.periodic, "periodic boundary");
  cmd_lattice->add_flag("--refine-max", lattice.refine_max,
                        "polish the grid maximum with the simplex optimizer");
  cmd_lattice->add_option("--opt-evals", lattice.optimizer_evaluations,
                          "optimizer evaluation budget");
  cmd_lattice->add_option("--opt-trace", lattice.trace_path,
                          "write optimizer trace CSV here");

  QuenchOptions quench;
  std::string quench_grid;
  RawTilt quench_tilt;
  double quench_zeeman = 0.0;
  auto* cmd_quench = app.add_subcommand("spin1-quench", "spin-mixing quench from the polar state");
  cmd_quench->add_option("--N", quench.particles, "particle number")->check(CLI::Range(2, 64));
  cmd_quench->add_option("--g", quench.coupling, "spin-collision coupling");
  auto* quench_q = cmd_quench->add_option("--q", quench_zeeman,
                                          "Zeeman shift (default -g(N-1/2))");
  cmd_quench->add_option("--t-grid", quench_grid, "times start:stop:step");
  cmd_quench->add_option("--phases-pi", quench_tilt.phases_pi,
                         "imprinted mode phases, units of pi (three values)");
  cmd_quench->add_option("--tilt-coeffs", quench_tilt.coefficients,
                         "eight Gell-Mann coefficients (default: Fourier)");

  GroundOptions ground;
  std::string ground_grid;
  std::string ground_ns;
  RawTilt ground_tilt;
  auto* cmd_ground = app.add_subcommand("spin1-ground", "ground-state scan and scaling");
  cmd_ground->add_option("--N", ground.particles, "particle number")->check(CLI::Range(2, 64));
  cmd_ground->add_option("--g", ground.coupling, "spin-collision coupling");
  cmd_ground->add_option("--q-grid", ground_grid, "q/q_c grid start:stop:step");
  cmd_ground->add_option("--scaling-N", ground_ns,
                         "comma list of N values; switches to scaling mode");
  cmd_ground->add_option("--q-over-qc", ground.q_over_qc, "q/q_c used in scaling mode");
  cmd_ground->add_option("--phases-pi", ground_tilt.phases_pi,
                         "imprinted mode phases, units of pi (three values)");
  cmd_ground->add_option("--tilt-coeffs", ground_tilt.coefficients,
                         "eight Gell-Mann coefficients (default: Fourier)");

  VerifyOptions verify;
  std::string verify_dims;
  auto* cmd_verify = app.add_subcommand("verify", "randomized property suite");
  cmd_verify->add_option("--trials", verify.trials, "number of random trials");
  cmd_verify->add_option("--dims", verify_dims, "comma list of local dimensions");
  cmd_verify->add_option("--dump", verify.dump_path, "counterexample dump path");
  cmd_verify->add_option("--corrupt-qfsd", verify.corrupt_qfsd,
                         "shift q_fsd before checking (suite self-test)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_lattice)) {
      if (!lattice_grid.empty()) lattice.t_grid = parse_grid(lattice_grid);
      return run_lattice(lattice, common);
    }
    if (app.got_subcommand(cmd_quench)) {
      if (!quench_grid.empty()) quench.t_grid = parse_grid(quench_grid);
      if (quench_q->count() > 0) quench.zeeman = quench_zeeman;
      apply_tilt(quench_tilt, quench.phases_pi, quench.tilt_coefficients);
      return run_spin1_quench(quench, common);
    }
    if (app.got_subcommand(cmd_ground)) {
      if (!ground_grid.empty()) ground.q_grid = parse_grid(ground_grid);
      if (!ground_ns.empty())
        ground.scaling_particle_numbers = parse_int_list(ground_ns);
      apply_tilt(ground_tilt, ground.phases_pi, ground.tilt_coefficients);
      return run_spin1_ground(ground, common);
    }
    if (!verify_dims.empty()) verify.dims = parse_int_list(verify_dims);
    return run_verify(verify, common);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
