#include "entbound/verify.hpp"

#include "entbound/bounds.hpp"
#include "entbound/csv.hpp"
#include "entbound/entropy.hpp"
#include "entbound/measure.hpp"
#include "entbound/parallel.hpp"
#include "entbound/rng.hpp"
#include "entbound/spin1.hpp"

#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace entbound::verify {

namespace {

constexpr double theorem_slack = 1e-7;
constexpr double hierarchy_slack = 1e-9;
constexpr double tightness_slack = 1e-8;

struct TrialSetting {
  bool pure = true;
  Matrix state;  // amplitudes column or density entries
  Matrix xa, xb, za, zb;
};

Violation make_violation(const std::string& property, const std::string& detail,
                         long trial, const TrialSetting& setting) {
  Violation v;
  v.property = property;
  v.detail = detail;
  v.trial = trial;
  v.pure = setting.pure;
  v.state = setting.state;
  v.basis_xa = setting.xa;
  v.basis_xb = setting.xb;
  v.basis_za = setting.za;
  v.basis_zb = setting.zb;
  return v;
}

std::string excess(const char* what, double left, double right) {
  return std::string(what) + ": " + csv::format_double(left) + " vs " +
         csv::format_double(right) + " (excess " + csv::format_double(left - right) +
         ")";
}

// Maximally entangled state with computational + Fourier bases must saturate
// the bound at log d. Also the deterministic canary for the corrupt hook.
void run_tightness_checks(const Options& options, Outcome& outcome) {
  for (const Index d : {2, 3, 4, 5, 8}) {
    const BipartiteIndexer indexer(d, d);
    Vector amps = Vector::Zero(d * d);
    for (Index i = 0; i < d; ++i)
      amps[indexer.combine(i, i)] = 1.0 / std::sqrt(static_cast<double>(d));
    const StateVector psi(amps, indexer);
    const MeasurementBasis comp = MeasurementBasis::computational(d);
    const MeasurementBasis fourier = fourier_basis(d);
    BoundReport r = assemble_report(psi, indexer, comp, comp, fourier, fourier);
    r.q_fsd += options.corrupt_qfsd;
    r.bound_fsd += options.corrupt_qfsd;
    const double expected = log_units(static_cast<double>(d));
    TrialSetting setting{true, amps, comp.columns(), comp.columns(), fourier.columns(),
                         fourier.columns()};
    outcome.fixed_checks += 3;
    if (std::abs(r.bound_fsd - expected) > tightness_slack)
      outcome.violations.push_back(make_violation(
          "mub_tightness_fsd", excess("bound_fsd vs log d", r.bound_fsd, expected), -1,
          setting));
    if (std::abs(r.bound_mu - expected) > tightness_slack)
      outcome.violations.push_back(make_violation(
          "mub_tightness_mu", excess("bound_mu vs log d", r.bound_mu, expected), -1,
          setting));
    if (std::abs(r.true_neg_hab.value() - expected) > tightness_slack)
      outcome.violations.push_back(make_violation(
          "mub_tightness_truth", excess("truth vs log d", r.true_neg_hab.value(), expected),
          -1, setting));
  }
}

void run_random_trials(const Options& options, Outcome& outcome) {
  const Rng base(options.seed);
  std::vector<std::vector<Violation>> found(options.trials);
  parallel_for(options.trials, options.threads, [&](std::size_t t) {
    Rng rng = base.fork(t);
    const Index d = options.dims[t % options.dims.size()];
    const BipartiteIndexer indexer(d, d);
    const bool pure = t % 2 == 0;

    TrialSetting setting;
    setting.pure = pure;
    const MeasurementBasis xa(rng.random_unitary(d), default_outcome_labels(d));
    const MeasurementBasis xb(rng.random_unitary(d), default_outcome_labels(d));
    const MeasurementBasis za(rng.random_unitary(d), default_outcome_labels(d));
    const MeasurementBasis zb(rng.random_unitary(d), default_outcome_labels(d));
    setting.xa = xa.columns();
    setting.xb = xb.columns();
    setting.za = za.columns();
    setting.zb = zb.columns();

    BoundReport r;
    double side_gap = 0.0;
    if (pure) {
      const StateVector psi(rng.random_pure_amplitudes(d * d), indexer);
      setting.state = psi.amplitudes();
      r = assemble_report(psi, indexer, xa, xb, za, zb);
      const Matrix coeff = psi.coefficient_matrix();
      side_gap = std::abs(von_neumann_entropy(DensityMatrix(coeff * coeff.adjoint())) -
                          von_neumann_entropy(DensityMatrix(coeff.adjoint() * coeff)));
    } else {
      const Index rank = 1 + static_cast<Index>(rng.next_u64() % (d * d));
      const DensityMatrix rho(rng.random_density_entries(d * d, rank), indexer);
      setting.state = rho.entries();
      r = assemble_report(rho, indexer, xa, xb, za, zb);
    }
    r.q_fsd += options.corrupt_qfsd;
    r.bound_fsd += options.corrupt_qfsd;

    const long trial = static_cast<long>(t);
    auto& sink = found[t];
    const double truth = r.true_neg_hab.value();
    if (r.bound_fsd > truth + theorem_slack)
      sink.push_back(make_violation("theorem_fsd",
                                    excess("bound_fsd vs truth", r.bound_fsd, truth),
                                    trial, setting));
    if (r.bound_mu > truth + theorem_slack)
      sink.push_back(make_violation("uncertainty_mu",
                                    excess("bound_mu vs truth", r.bound_mu, truth),
                                    trial, setting));
    if (r.q_mu > r.q_c + hierarchy_slack)
      sink.push_back(make_violation("hierarchy_mu_c", excess("q_mu vs q_c", r.q_mu, r.q_c),
                                    trial, setting));
    if (r.q_c > r.q_fsd + hierarchy_slack)
      sink.push_back(make_violation("hierarchy_c_fsd", excess("q_c vs q_fsd", r.q_c, r.q_fsd),
                                    trial, setting));
    if (pure && side_gap > tightness_slack)
      sink.push_back(make_violation("schmidt_symmetry",
                                    "entropy gap " + csv::format_double(side_gap), trial,
                                    setting));
  });
  outcome.random_trials = options.trials;
  for (auto& per_trial : found)
    for (auto& v : per_trial) outcome.violations.push_back(std::move(v));
}

// Split spin-1 states with number-conserving tilts: the sector-resolved
// factor exists, sits inside the hierarchy, and the vacuum forces q_mu = 0.
void run_sector_checks(const Options& options, Outcome& outcome) {
  const Rng base(options.seed);
  const int reps = std::max(1, options.trials / 250);
  struct Instance {
    int n;
    std::uint64_t stream;
  };
  std::vector<Instance> instances;
  for (int n = 2; n <= 6; ++n)
    for (int rep = 0; rep < reps; ++rep)
      instances.push_back({n, 0x51000000ull + static_cast<std::uint64_t>(n) * 97 + rep});
  std::vector<std::vector<Violation>> found(instances.size());
  parallel_for(instances.size(), options.threads, [&](std::size_t i) {
    Rng rng = base.fork(instances[i].stream);
    const int n = instances[i].n;
    const FockBasis basis3(3, n);
    const StateVector state3(rng.random_pure_amplitudes(basis3.size()));
    const spin1::SplitState split = spin1::beam_split(state3);
    const spin1::SubsystemBasis sub(n);
    const MeasurementBasis x = spin1::bare_mode_basis(sub);
    const MeasurementBasis z = spin1::tilted_mode_basis(rng.random_unitary(3), sub);
    const BipartiteIndexer indexer(sub.dim(), sub.dim());
    BoundReport r = assemble_report(spin1::to_bipartite(split, sub), indexer, x, x, z, z,
                                    spin1::subsystem_sectors(sub),
                                    spin1::configurational_coherent_information(split));
    r.q_fsd += options.corrupt_qfsd;
    r.bound_fsd += options.corrupt_qfsd;

    TrialSetting setting{true, split.amplitudes, x.columns(), x.columns(), z.columns(),
                         z.columns()};
    const long trial = static_cast<long>(i);
    auto& sink = found[i];
    if (std::abs(r.q_mu) > 1e-12)
      sink.push_back(make_violation("sector_vacuum_mu",
                                    "q_mu = " + csv::format_double(r.q_mu), trial,
                                    setting));
    if (!r.q_pn)
      sink.push_back(
          make_violation("sector_pn_missing", "q_pn not computed", trial, setting));
    else if (*r.q_pn > r.q_c + hierarchy_slack)
      sink.push_back(make_violation("hierarchy_pn_c", excess("q_pn vs q_c", *r.q_pn, r.q_c),
                                    trial, setting));
    if (r.q_c > r.q_fsd + hierarchy_slack)
      sink.push_back(make_violation("hierarchy_c_fsd", excess("q_c vs q_fsd", r.q_c, r.q_fsd),
                                    trial, setting));
    if (r.bound_fsd > r.true_neg_hab.value() + theorem_slack)
      sink.push_back(make_violation(
          "theorem_fsd_sector",
          excess("bound_fsd vs configurational truth", r.bound_fsd, *r.true_neg_hab),
          trial, setting));
  });
  outcome.sector_instances = static_cast<int>(instances.size());
  for (auto& per_instance : found)
    for (auto& v : per_instance) outcome.violations.push_back(std::move(v));
}

}  // namespace

Outcome run_suite(const Options& options) {
  if (options.trials < 1) throw std::invalid_argument("verify: trials must be positive");
  if (options.dims.empty()) throw std::invalid_argument("verify: no dimensions given");
  for (const int d : options.dims)
    if (d < 2) throw std::invalid_argument("verify: dimensions must be at least 2");
  Outcome outcome;
  run_tightness_checks(options, outcome);
  run_random_trials(options, outcome);
  run_sector_checks(options, outcome);
  outcome.summary.push_back("mub tightness checks: " +
                            std::to_string(outcome.fixed_checks));
  outcome.summary.push_back("random trials: " + std::to_string(outcome.random_trials));
  outcome.summary.push_back("spin-1 sector instances: " +
                            std::to_string(outcome.sector_instances));
  outcome.summary.push_back("violations: " + std::to_string(outcome.violations.size()));
  return outcome;
}

namespace {

void write_matrix(std::ostream& out, const char* name, const Matrix& m) {
  out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      out << csv::format_double(m(i, j).real()) << ','
          << csv::format_double(m(i, j).imag()) << '\n';
}

}  // namespace

void write_violation(std::ostream& out, const Violation& violation) {
  out << "property " << violation.property << '\n';
  out << "detail " << violation.detail << '\n';
  out << "trial " << violation.trial << '\n';
  out << "kind " << (violation.pure ? "pure" : "mixed") << '\n';
  write_matrix(out, "state", violation.state);
  write_matrix(out, "basis_xa", violation.basis_xa);
  write_matrix(out, "basis_xb", violation.basis_xb);
  write_matrix(out, "basis_za", violation.basis_za);
  write_matrix(out, "basis_zb", violation.basis_zb);
}

}  // namespace entbound::verify
