#include "entbound/run.hpp"

#include "entbound/csv.hpp"
#include "entbound/entropy.hpp"
#include "entbound/lattice.hpp"
#include "entbound/optimize.hpp"
#include "entbound/spectral.hpp"
#include "entbound/spin1.hpp"
#include "entbound/verify.hpp"
#include "entbound/version.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace entbound::cli {

GridSpec parse_grid(const std::string& text) {
  GridSpec grid;
  std::istringstream in(text);
  char sep1 = 0, sep2 = 0;
  if (!(in >> grid.start >> sep1 >> grid.stop >> sep2 >> grid.step) || sep1 != ':' ||
      sep2 != ':' || (in >> std::ws, !in.eof()))
    throw std::invalid_argument("grid must be start:stop:step, got '" + text + "'");
  return grid;
}

std::vector<double> grid_points(const GridSpec& grid) {
  if (!(grid.step > 0.0)) throw std::invalid_argument("grid step must be positive");
  std::vector<double> points;
  for (int i = 0;; ++i) {
    const double t = grid.start + i * grid.step;
    if (t > grid.stop + 0.5 * grid.step) break;
    points.push_back(t);
  }
  if (points.empty()) throw std::invalid_argument("grid contains no points");
  return points;
}

std::vector<double> parse_double_list(const std::string& text, std::size_t expected) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    std::size_t used = 0;
    values.push_back(std::stod(field, &used));
    if (used != field.size())
      throw std::invalid_argument("bad number '" + field + "' in list");
  }
  if (expected != 0 && values.size() != expected)
    throw std::invalid_argument("expected " + std::to_string(expected) +
                                " comma-separated values, got '" + text + "'");
  return values;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  for (const double v : parse_double_list(text, 0)) {
    const int n = static_cast<int>(std::lround(v));
    if (std::abs(v - n) > 1e-12)
      throw std::invalid_argument("expected integers in list '" + text + "'");
    values.push_back(n);
  }
  return values;
}

namespace {

using HeaderInfo = std::vector<std::pair<std::string, std::string>>;

void apply_log_base(const CommonOptions& common) {
  if (common.log_base == "2")
    set_entropy_log_base(LogBase::two);
  else if (common.log_base == "e")
    set_entropy_log_base(LogBase::e);
  else
    throw std::invalid_argument("log base must be 2 or e");
}

HeaderInfo common_header(const std::string& subcommand, const CommonOptions& common,
                         const std::string& out_path) {
  return {{"version", version_string},
          {"subcommand", subcommand},
          {"out", out_path},
          {"seed", std::to_string(common.seed)},
          {"threads", std::to_string(common.threads)},
          {"log_base", common.log_base}};
}

std::string grid_string(const GridSpec& grid) {
  return csv::format_double(grid.start) + ":" + csv::format_double(grid.stop) + ":" +
         csv::format_double(grid.step);
}

void write_csv(const std::string& path, const HeaderInfo& header,
               const std::vector<BoundReport>& reports) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  csv::write_reports(out, header, reports);
  if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

std::size_t argmax_bound_fsd(const std::vector<BoundReport>& reports) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < reports.size(); ++i)
    if (reports[i].bound_fsd > reports[best].bound_fsd) best = i;
  return best;
}

spin1::TiltParams make_tilt(const std::optional<std::array<double, 8>>& coefficients,
                            const std::array<double, 3>& phases_pi) {
  std::array<double, 3> phases{};
  for (int i = 0; i < 3; ++i) phases[i] = phases_pi[i] * std::numbers::pi;
  if (coefficients) return {*coefficients, phases};
  return spin1::fourier_tilt(phases);
}

void append_array(HeaderInfo& header, const char* key, const double* values,
                  std::size_t count) {
  std::string joined;
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) joined += ',';
    joined += csv::format_double(values[i]);
  }
  header.emplace_back(key, joined);
}

void write_optimizer_trace(const std::string& path, const optimize::Result& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open trace file '" + path + "'");
  out << "start,evaluation,value";
  const Index dim = result.trace.empty() ? 0 : result.trace.front().point.size();
  for (Index i = 0; i < dim; ++i) out << ",p" << i;
  out << '\n';
  for (const auto& entry : result.trace) {
    out << entry.start << ',' << entry.evaluation << ','
        << csv::format_double(entry.value);
    for (Index i = 0; i < entry.point.size(); ++i)
      out << ',' << csv::format_double(entry.point[i]);
    out << '\n';
  }
}

}  // namespace

int run_lattice(const LatticeOptions& options, const CommonOptions& common) {
  apply_log_base(common);
  const std::string out_path = common.out_path.empty() ? "lattice.csv" : common.out_path;
  const lattice::LatticeModel model{options.sites, options.tunneling,
                                    options.u_over_j * options.tunneling,
                                    options.periodic};
  const std::vector<double> times = grid_points(options.t_grid);
  std::vector<BoundReport> reports = lattice::sweep(model, times, common.threads);

  HeaderInfo header = common_header("lattice", common, out_path);
  header.emplace_back("L", std::to_string(options.sites));
  header.emplace_back("U_over_J", csv::format_double(options.u_over_j));
  header.emplace_back("J", csv::format_double(options.tunneling));
  header.emplace_back("t_grid", grid_string(options.t_grid));
  header.emplace_back("periodic", options.periodic ? "true" : "false");
  header.emplace_back("refine_max", options.refine_max ? "true" : "false");

  std::size_t best = argmax_bound_fsd(reports);
  if (options.refine_max) {
    const auto ground_pair = ground_state(lattice::build_hubbard(model));
    const StateVector ground(ground_pair.second.amplitudes(),
                             BipartiteIndexer(model.sites, model.sites));
    const double center = times[best];
    optimize::Options opt;
    opt.max_evaluations = options.optimizer_evaluations;
    opt.restarts = 2;
    opt.seed = common.seed;
    opt.record_trace = !options.trace_path.empty();
    opt.box = {{std::max(0.0, center - 2.0 * options.t_grid.step),
                center + 2.0 * options.t_grid.step}};
    RealVector warm(1);
    warm[0] = center;
    opt.warm_starts = {warm};
    const optimize::Result refined = optimize::maximize(
        [&](const RealVector& p) {
          return lattice::report_at(model, ground, p[0]).bound_fsd;
        },
        opt);
    if (!options.trace_path.empty())
      write_optimizer_trace(options.trace_path, refined);
    reports.push_back(lattice::report_at(model, ground, refined.best_point[0]));
    header.emplace_back("refined_tJ",
                        csv::format_double(refined.best_point[0] * model.tunneling));
    header.emplace_back("refined_bound_fsd", csv::format_double(refined.best_value));
    best = argmax_bound_fsd(reports);
  }

  write_csv(out_path, header, reports);
  const auto& peak = reports[best];
  std::cout << "lattice: " << reports.size() << " rows -> " << out_path << '\n';
  std::cout << "max bound_fsd = " << csv::format_double(peak.bound_fsd) << " at tJ = "
            << peak.meta.back().second << " (true -H(A|B) = "
            << csv::format_double(peak.true_neg_hab.value()) << ")\n";
  return 0;
}

int run_spin1_quench(const QuenchOptions& options, const CommonOptions& common) {
  apply_log_base(common);
  const std::string out_path =
      common.out_path.empty() ? "spin1_quench.csv" : common.out_path;
  const double zeeman =
      options.zeeman.value_or(-options.coupling * (options.particles - 0.5));
  const spin1::Spin1Model model{options.particles, options.coupling, zeeman};
  const spin1::TiltParams tilt = make_tilt(options.tilt_coefficients, options.phases_pi);
  const std::vector<double> times = grid_points(options.t_grid);
  const std::vector<BoundReport> reports =
      spin1::quench_sweep(model, times, tilt, common.threads);

  HeaderInfo header = common_header("spin1-quench", common, out_path);
  header.emplace_back("N", std::to_string(options.particles));
  header.emplace_back("g", csv::format_double(options.coupling));
  header.emplace_back("q", csv::format_double(zeeman));
  header.emplace_back("t_grid", grid_string(options.t_grid));
  append_array(header, "phases_pi", options.phases_pi.data(), 3);
  append_array(header, "tilt_coefficients", tilt.coefficients.data(), 8);

  write_csv(out_path, header, reports);
  const auto& peak = reports[argmax_bound_fsd(reports)];
  std::size_t detected = 0;
  for (const auto& r : reports)
    if (r.bound_fsd > 0.0) ++detected;
  std::cout << "spin1-quench: " << reports.size() << " rows -> " << out_path << '\n';
  std::cout << "max bound_fsd = " << csv::format_double(peak.bound_fsd)
            << " at tg = " << peak.meta[2].second << "; positive rows: " << detected
            << "/" << reports.size() << '\n';
  return 0;
}

int run_spin1_ground(const GroundOptions& options, const CommonOptions& common) {
  apply_log_base(common);
  const std::string out_path =
      common.out_path.empty() ? "spin1_ground.csv" : common.out_path;
  const spin1::TiltParams tilt = make_tilt(options.tilt_coefficients, options.phases_pi);

  HeaderInfo header = common_header("spin1-ground", common, out_path);
  header.emplace_back("g", csv::format_double(options.coupling));
  append_array(header, "phases_pi", options.phases_pi.data(), 3);
  append_array(header, "tilt_coefficients", tilt.coefficients.data(), 8);

  if (!options.scaling_particle_numbers.empty()) {
    header.emplace_back("mode", "scaling");
    std::string ns;
    for (std::size_t i = 0; i < options.scaling_particle_numbers.size(); ++i) {
      if (i > 0) ns += ',';
      ns += std::to_string(options.scaling_particle_numbers[i]);
    }
    header.emplace_back("N_list", ns);
    header.emplace_back("q_over_qc", csv::format_double(options.q_over_qc));
    const spin1::ScalingResult result =
        spin1::twin_fock_scaling(options.scaling_particle_numbers, options.q_over_qc,
                                 options.coupling, tilt, common.threads);
    auto fit_line = [](const spin1::ScalingFit& fit) {
      return "a = " + csv::format_double(fit.slope) + ", b = " +
             csv::format_double(fit.shift) + ", c = " +
             csv::format_double(fit.intercept) + ", rss = " +
             csv::format_double(fit.rss);
    };
    header.emplace_back("bound_fit", fit_line(result.bound_fit));
    append_array(header, "bound_fit_residuals", result.bound_fit.residuals.data(),
                 result.bound_fit.residuals.size());
    header.emplace_back("truth_fit", fit_line(result.truth_fit));
    append_array(header, "truth_fit_residuals", result.truth_fit.residuals.data(),
                 result.truth_fit.residuals.size());
    write_csv(out_path, header, result.reports);
    std::cout << "spin1-ground scaling: " << result.reports.size() << " rows -> "
              << out_path << '\n';
    std::cout << "bound fit: " << fit_line(result.bound_fit) << '\n';
    std::cout << "truth fit: " << fit_line(result.truth_fit) << '\n';
    return 0;
  }

  const GridSpec grid = options.q_grid.value_or(GridSpec{-2.0, 2.0, 0.125});
  header.emplace_back("mode", "q-scan");
  header.emplace_back("N", std::to_string(options.particles));
  header.emplace_back("q_over_qc_grid", grid_string(grid));
  const std::vector<BoundReport> reports = spin1::ground_scan(
      options.particles, options.coupling, grid_points(grid), tilt, common.threads);
  write_csv(out_path, header, reports);
  const auto& peak = reports[argmax_bound_fsd(reports)];
  std::cout << "spin1-ground: " << reports.size() << " rows -> " << out_path << '\n';
  std::cout << "max bound_fsd = " << csv::format_double(peak.bound_fsd)
            << " at q/q_c = " << peak.meta[2].second << " (" << peak.meta.back().second
            << ")\n";
  return 0;
}

int run_verify(const VerifyOptions& options, const CommonOptions& common) {
  apply_log_base(common);
  verify::Options vopts;
  vopts.trials = options.trials;
  vopts.dims = options.dims;
  vopts.seed = common.seed;
  vopts.threads = common.threads;
  vopts.corrupt_qfsd = options.corrupt_qfsd;
  const verify::Outcome outcome = verify::run_suite(vopts);
  for (const auto& line : outcome.summary) std::cout << "verify: " << line << '\n';
  if (outcome.passed()) {
    std::cout << "verify: PASS\n";
    return 0;
  }
  const verify::Violation& first = outcome.violations.front();
  std::ofstream dump(options.dump_path, std::ios::binary);
  if (!dump)
    throw std::invalid_argument("cannot open dump file '" + options.dump_path + "'");
  verify::write_violation(dump, first);
  std::cerr << "verify: FAIL (" << first.property << "); counterexample written to "
            << options.dump_path << '\n';
  return 1;
}

}  // namespace entbound::cli
