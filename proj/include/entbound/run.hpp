#pragma once

#include "entbound/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace entbound::cli {

// start:stop:step inclusive grid; stop is included up to a half-step slack.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

GridSpec parse_grid(const std::string& text);
std::vector<double> grid_points(const GridSpec& grid);

std::vector<double> parse_double_list(const std::string& text, std::size_t expected);
std::vector<int> parse_int_list(const std::string& text);

struct CommonOptions {
  std::string out_path;  // empty = subcommand default
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 = available parallelism
  std::string log_base = "2";
};

struct LatticeOptions {
  int sites = 2;
  double u_over_j = -100.0;
  double tunneling = 1.0;
  GridSpec t_grid{0.0, 0.8, 0.01};
  bool periodic = false;
  bool refine_max = false;
  int optimizer_evaluations = 200;
  std::string trace_path;  // optimizer trace CSV, empty = none
};

struct QuenchOptions {
  int particles = 10;
  double coupling = -1.0;
  std::optional<double> zeeman;  // default: -g (N - 1/2)
  GridSpec t_grid{0.0, 3.0, 0.05};
  std::array<double, 3> phases_pi{0.0, 0.0, 0.0};
  std::optional<std::array<double, 8>> tilt_coefficients;  // default: Fourier
};

struct GroundOptions {
  int particles = 10;
  double coupling = -1.0;
  std::optional<GridSpec> q_grid;  // q / q_c scan (default -2:2:0.125)
  std::vector<int> scaling_particle_numbers;  // nonempty switches to scaling mode
  double q_over_qc = -5.0;                    // used in scaling mode
  std::array<double, 3> phases_pi{0.0, 0.0, 0.0};
  std::optional<std::array<double, 8>> tilt_coefficients;  // default: Fourier
};

struct VerifyOptions {
  int trials = 1000;
  std::vector<int> dims{2, 3, 4};
  std::string dump_path = "counterexample.txt";
  double corrupt_qfsd = 0.0;  // test hook
};

int run_lattice(const LatticeOptions& options, const CommonOptions& common);
int run_spin1_quench(const QuenchOptions& options, const CommonOptions& common);
int run_spin1_ground(const GroundOptions& options, const CommonOptions& common);
int run_verify(const VerifyOptions& options, const CommonOptions& common);

}  // namespace entbound::cli
