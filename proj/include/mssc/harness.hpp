#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mssc/adversary.hpp"
#include "mssc/core.hpp"
#include "mssc/dlm.hpp"
#include "mssc/offline.hpp"
#include "mssc/potentials.hpp"

namespace mssc {

// Version tag written into every CSV row and JSON document.
inline constexpr int kSchemaVersion = 1;

enum class Algorithm { kDlm, kDlmC };
enum class Baseline { kNone, kOpt, kBestFixed, kMtfbFromOpt, kMtfbChoices, kLbStrategy };
enum class OutputFormat { kCsv, kJson };

Algorithm parse_algorithm(const std::string& text);
Baseline parse_baseline(const std::string& text);
OutputFormat parse_format(const std::string& text);
std::string baseline_name(Baseline baseline);

struct GeneratorSpec {
  int n = 8;
  int r = 2;
  int m = 20;
  RequestDistribution distribution;
};

struct ExperimentConfig {
  // Exactly one instance source: a file, an in-memory instance, or a generator
  // spec (drawn with `seed`).
  std::optional<std::filesystem::path> instance_path;
  std::optional<Instance> instance;
  std::optional<GeneratorSpec> generator;

  Algorithm algorithm = Algorithm::kDlm;
  int c = 1;  // divisor for kDlmC
  Baseline baseline = Baseline::kNone;
  std::vector<Element> choices;  // for kMtfbChoices

  bool audit_fetches = true;
  std::uint64_t seed = 0;

  // Throws BadConfig on conflicting or missing settings.
  void validate() const;
  Instance resolve_instance() const;
  AlgState initial_state(const Instance& inst) const;
};

// ---------------------------------------------------------------- simulate

struct SimulationResult {
  Instance instance;
  std::vector<StepReport> steps;
  std::vector<Permutation> alg_perms;  // online list after each step, [0] = start
  Cost alg_cost = 0;
  std::optional<OfflineTrace> baseline;
  std::optional<double> ratio;  // alg_cost / baseline total, when the latter is positive
};

SimulationResult run_simulate(const ExperimentConfig& config);

// Offline play for a baseline choice. best_fixed yields a trace that starts on
// its own list and never moves.
OfflineTrace baseline_trace(const Instance& inst, Baseline baseline, const std::vector<Element>& choices);

// ---------------------------------------------------------------- audit

struct AuditRecord {
  int step = 0;
  AuditVerdict verdict;
  Element element = -1;  // fetched (fetch audits) or moved (stage-2 audits) element
};

struct AuditSummary {
  int steps = 0;
  int checks = 0;
  int failures = 0;
  double max_slack_ratio = 0.0;  // max over checks with positive bound of lhs / bound
  int first_failure_step = -1;
};

struct AuditReport {
  std::vector<AuditRecord> records;
  AuditSummary summary;
  Potentials initial;
  Potentials final;
  Rational telescoped_phi;  // sum of audited stage deltas
  Rational telescoped_psi;
  Cost alg_cost = 0;
  Cost off_cost = 0;
  int max_cascade_iterations = 0;
  // Violations of the per-element state invariants (budget bounds,
  // non-negative potentials, loop bound); empty when all held.
  std::vector<std::string> invariant_violations;

  bool all_passed() const { return summary.failures == 0 && invariant_violations.empty(); }
};

// Replays the instance stage by stage: online access and reordering against
// the offline list's access (stage 1, plus one fetch audit per fetch), then
// the offline move (stage 2, MTF-based baselines only). Throws
// AuditRequiresBaseline without a baseline, BadConfig for baselines that are
// neither fixed nor MTF-based.
AuditReport run_audit(const ExperimentConfig& config);

// ---------------------------------------------------------------- lowerbound

struct LowerBoundPhaseRow {
  int phase = 0;
  Cost alg_cost = 0;
  Cost off_cost = 0;
  Cost cumulative_alg = 0;
  Cost cumulative_off = 0;
  double cumulative_ratio = 0;             // setup excluded
  double cumulative_ratio_with_setup = 0;  // setup charged up front
  bool alg_lower_bound_ok = false;         // alg_cost >= (c+r)(n-r)
  bool off_upper_bound_ok = false;         // off_cost <= 3c+3r
  bool structure_ok = false;               // budgets zero, cyclic front, others shifted
  bool budget_thresholds_ok = false;       // window budgets <= n-r+1 after c, >= n at the last request
};

struct LowerBoundReport {
  PhaseConfig config;
  Cost alg_cost = 0;
  Cost off_cost = 0;  // phases only
  Cost setup_cost = 0;
  double ratio = 0;             // alg_cost / off_cost
  double ratio_with_setup = 0;  // alg_cost / (off_cost + setup_cost)
  Rational threshold;           // r^2 / 3
  int crossing_phase = -1;      // first phase whose with-setup cumulative ratio reaches the threshold
  std::size_t kept_size = 0;
  std::vector<LowerBoundPhaseRow> phases;
  Instance recorded;
  bool pass = false;
};

// Throws RequiresRAtLeast2 for r = 1.
LowerBoundReport run_lowerbound(const PhaseConfig& config);

// ---------------------------------------------------------------- oracle

struct OracleReport {
  Cost dlm_cost = 0;
  Cost opt_cost = 0;
  Cost off_star_cost = 0;
  Cost mtf_singleton_cost = 0;  // move-to-front on the singleton reduction
  Cost best_fixed_cost = 0;
  Permutation best_fixed;
  Potentials static_initial;  // potentials of (start list, zero budgets) against best_fixed
  Rational static_bound;      // (3+alpha)2^(kappa+1) best_fixed + Phi0 + Psi0
  bool off_star_within_4opt = false;
  bool dlm_within_static_bound = false;
};

// Throws OracleTooLarge when n exceeds the exhaustive oracles' ceilings.
OracleReport run_oracle(const ExperimentConfig& config);

// ---------------------------------------------------------------- campaigns

// Runs fn(i) for i in [0, count) on up to `workers` threads (0 = hardware
// concurrency). Results are stored by index, so output order is deterministic.
template <typename T>
std::vector<T> run_indexed(std::size_t count, const std::function<T(std::size_t)>& fn, unsigned workers = 0);

// ---------------------------------------------------------------- reports

void write_trace_csv(std::ostream& os, const SimulationResult& sim);
void write_trace_json(std::ostream& os, const SimulationResult& sim);
void write_audit_csv(std::ostream& os, const AuditReport& report);
void write_audit_json(std::ostream& os, const AuditReport& report);
void write_lowerbound_csv(std::ostream& os, const LowerBoundReport& report);
void write_lowerbound_phases_csv(std::ostream& os, const LowerBoundReport& report);
void write_lowerbound_json(std::ostream& os, const LowerBoundReport& report);
void write_oracle_csv_header(std::ostream& os);
void write_oracle_csv_row(std::ostream& os, std::size_t index, const OracleReport& report);
void write_oracle_json(std::ostream& os, const std::vector<OracleReport>& reports);

}  // namespace mssc

#include "mssc/detail/run_indexed.hpp"
