#include "mssc/harness.hpp"

#include <algorithm>

#include "mssc/instance_io.hpp"

namespace mssc {
namespace {

void record(AuditReport& report, int step, const AuditVerdict& verdict, Element element) {
  report.records.push_back({step, verdict, element});
  AuditSummary& s = report.summary;
  ++s.checks;
  if (!verdict.pass) {
    ++s.failures;
    if (s.first_failure_step < 0) s.first_failure_step = step;
  }
  if (verdict.bound > 0) s.max_slack_ratio = std::max(s.max_slack_ratio, (verdict.lhs() / verdict.bound).to_double());
}

// Checks the per-element state invariants at one checkpoint: non-negative
// potentials, and the budget bound (strict b < pi between steps, b < 1.5 pi
// inside a step; the latter only for the per-request divisor).
class InvariantChecker {
 public:
  InvariantChecker(const PotentialParams& params, AuditReport& report) : params_(params), report_(report) {}

  void check(const AlgState& state, const Permutation& off, int step, const char* where, bool between_steps) {
    const PairState pair = PairState::of(state, off);
    for (Element z = 0; z < pair.size(); ++z) check_element(state, pair, z, step, where, between_steps);
  }

  void check_element(const AlgState& state, const PairState& pair, Element z, int step, const char* where,
                     bool between_steps) {
    const Rational b = pair.budgets[z];
    const Position pos = pair.alg.position(z);
    if (between_steps && !(b < pos)) {
      violation(step, where, "b(" + std::to_string(z) + ")=" + b.str() + " >= pi=" + std::to_string(pos));
    }
    if (!state.mode().is_fixed() && !(b < Rational(3, 2) * pos)) {
      violation(step, where, "b(" + std::to_string(z) + ")=" + b.str() + " >= 1.5 pi=" + std::to_string(pos));
    }
    if (!state.mode().is_fixed()) {
      if (phi_z(pair, params_, z) < 0) violation(step, where, "Phi_" + std::to_string(z) + " < 0");
      if (psi_z(pair, params_, z) < 0) violation(step, where, "Psi_" + std::to_string(z) + " < 0");
    }
  }

  void violation(int step, const char* where, const std::string& what) {
    if (report_.invariant_violations.size() < 100) {
      report_.invariant_violations.push_back("step " + std::to_string(step) + " (" + where + "): " + what);
    }
  }

 private:
  const PotentialParams& params_;
  AuditReport& report_;
};

class FetchAuditor : public ServeObserver {
 public:
  FetchAuditor(const PotentialParams& params, const Permutation& off, AuditReport& report, InvariantChecker& checker,
               int step, bool audit_fetches)
      : params_(params), off_(off), report_(report), checker_(checker), step_(step), audit_fetches_(audit_fetches) {}

  void before_fetch(const AlgState& state, Element /*z*/) override {
    if (audit_fetches_) before_ = PairState::of(state, off_);
  }

  void after_fetch(const AlgState& state, Element z, Cost cost) override {
    if (audit_fetches_) {
      record(report_, step_, audit_fetch(before_, PairState::of(state, off_), z, cost, params_), z);
    }
    checker_.check(state, off_, step_, "after fetch", false);
  }

  void after_increment(const AlgState& state, Element y) override {
    checker_.check_element(state, PairState::of(state, off_), y, step_, "after budget increment", false);
  }

 private:
  const PotentialParams& params_;
  const Permutation& off_;
  AuditReport& report_;
  InvariantChecker& checker_;
  int step_;
  bool audit_fetches_;
  PairState before_;
};

}  // namespace

Algorithm parse_algorithm(const std::string& text) {
  if (text == "dlm") return Algorithm::kDlm;
  if (text == "dlm_c") return Algorithm::kDlmC;
  throw Error(ErrorCode::kBadConfig, "algorithm must be dlm or dlm_c, got '" + text + "'");
}

Baseline parse_baseline(const std::string& text) {
  if (text == "none") return Baseline::kNone;
  if (text == "opt") return Baseline::kOpt;
  if (text == "best_fixed") return Baseline::kBestFixed;
  if (text == "mtfb_from_opt") return Baseline::kMtfbFromOpt;
  if (text == "mtfb_choices") return Baseline::kMtfbChoices;
  if (text == "lb_strategy") return Baseline::kLbStrategy;
  throw Error(ErrorCode::kBadConfig, "unknown baseline '" + text + "'");
}

std::string baseline_name(Baseline baseline) {
  switch (baseline) {
    case Baseline::kNone: return "none";
    case Baseline::kOpt: return "opt";
    case Baseline::kBestFixed: return "best_fixed";
    case Baseline::kMtfbFromOpt: return "mtfb_from_opt";
    case Baseline::kMtfbChoices: return "mtfb_choices";
    case Baseline::kLbStrategy: return "lb_strategy";
  }
  return "?";
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "json") return OutputFormat::kJson;
  throw Error(ErrorCode::kBadConfig, "format must be csv or json, got '" + text + "'");
}

void ExperimentConfig::validate() const {
  const int sources = int(instance_path.has_value()) + int(instance.has_value()) + int(generator.has_value());
  if (sources != 1) throw Error(ErrorCode::kBadConfig, "exactly one instance source is required");
  if (algorithm == Algorithm::kDlmC && c < 1) {
    throw Error(ErrorCode::kBadConfig, "dlm_c needs a positive integer c, got " + std::to_string(c));
  }
  if (baseline == Baseline::kMtfbChoices && choices.empty()) {
    throw Error(ErrorCode::kBadConfig, "mtfb_choices baseline needs a choice list");
  }
  if (baseline != Baseline::kMtfbChoices && !choices.empty()) {
    throw Error(ErrorCode::kBadConfig, "a choice list is only meaningful with the mtfb_choices baseline");
  }
  if (baseline == Baseline::kLbStrategy) {
    throw Error(ErrorCode::kBadConfig, "lb_strategy is produced by the lowerbound command only");
  }
}

Instance ExperimentConfig::resolve_instance() const {
  validate();
  if (instance) {
    instance->validate();
    return *instance;
  }
  if (instance_path) return load_instance(*instance_path);
  const GeneratorSpec& g = *generator;
  return random_instance(g.n, g.r, g.m, g.distribution, seed);
}

AlgState ExperimentConfig::initial_state(const Instance& inst) const {
  return AlgState(inst.initial, algorithm == Algorithm::kDlmC ? DivisorMode::fixed(c) : DivisorMode::per_request());
}

OfflineTrace baseline_trace(const Instance& inst, Baseline baseline, const std::vector<Element>& choices) {
  switch (baseline) {
    case Baseline::kOpt: {
      const OptResult opt = opt_dynamic_bruteforce(inst);
      OfflineTrace trace;
      trace.perms = opt.perms;
      for (const StepCost& s : opt.steps) trace.steps.push_back({std::nullopt, s.access, s.reorder});
      return trace;
    }
    case Baseline::kBestFixed: {
      const FixedResult best = best_fixed_permutation(inst);
      OfflineTrace trace;
      trace.perms.assign(inst.m() + 1, best.perm);
      for (const Request& req : inst.requests) trace.steps.push_back({std::nullopt, access_cost(best.perm, req), 0});
      return trace;
    }
    case Baseline::kMtfbFromOpt:
      return derive_mtfb_from_opt(inst, opt_dynamic_bruteforce(inst));
    case Baseline::kMtfbChoices:
      return mtfb_replay(inst, choices);
    case Baseline::kNone:
    case Baseline::kLbStrategy:
      break;
  }
  throw Error(ErrorCode::kBadConfig, "baseline '" + baseline_name(baseline) + "' has no per-instance trace");
}

SimulationResult run_simulate(const ExperimentConfig& config) {
  SimulationResult sim;
  sim.instance = config.resolve_instance();
  AlgState state = config.initial_state(sim.instance);
  sim.alg_perms.push_back(state.permutation());
  for (const Request& req : sim.instance.requests) {
    sim.steps.push_back(serve(state, req));
    sim.alg_cost += sim.steps.back().total();
    sim.alg_perms.push_back(state.permutation());
  }
  if (config.baseline != Baseline::kNone) {
    sim.baseline = baseline_trace(sim.instance, config.baseline, config.choices);
    if (Cost off = sim.baseline->total(); off > 0) sim.ratio = static_cast<double>(sim.alg_cost) / off;
  }
  return sim;
}

AuditReport run_audit(const ExperimentConfig& config) {
  if (config.baseline == Baseline::kNone) {
    throw Error(ErrorCode::kAuditRequiresBaseline, "audit needs a fixed or MTF-based baseline");
  }
  if (config.baseline == Baseline::kOpt) {
    throw Error(ErrorCode::kBadConfig, "the opt baseline is not MTF-based; use mtfb_from_opt for audits");
  }
  const Instance inst = config.resolve_instance();
  const OfflineTrace trace = baseline_trace(inst, config.baseline, config.choices);
  const bool moves = config.baseline != Baseline::kBestFixed;
  const PotentialParams params = PotentialParams::for_r(inst.r);

  AuditReport report;
  InvariantChecker checker(params, report);
  AlgState state = config.initial_state(inst);
  Permutation off = trace.perms.front();
  report.initial = total_potential(PairState::of(state, off), params);
  checker.check(state, off, 0, "start", true);

  for (int t = 0; t < inst.m(); ++t) {
    const int step_no = t + 1;
    const Request& req = inst.requests[t];
    const PairState before = PairState::of(state, off);
    const Cost off_access = access_cost(off, req);

    FetchAuditor observer(params, off, report, checker, step_no, config.audit_fetches);
    const StepReport step = serve(state, req, &observer);
    report.alg_cost += step.total();
    report.off_cost += off_access;
    report.max_cascade_iterations = std::max(report.max_cascade_iterations, step.cascade_iterations);
    if (step.cascade_iterations > inst.n()) checker.violation(step_no, "threshold loop", "more than n iterations");

    const PairState after = PairState::of(state, off);
    const AuditVerdict v1 = audit_stage1(before, after, step, off_access, params);
    report.telescoped_phi += v1.delta_phi;
    report.telescoped_psi += v1.delta_psi;
    record(report, step_no, v1, -1);
    checker.check(state, off, step_no, "after stage 1", true);

    if (moves) {
      const Element moved = *trace.steps[t].moved;
      Permutation next = off;
      report.off_cost += next.move_to_front(moved);
      const AuditVerdict v2 = audit_stage2(after, PairState::of(state, next), moved, params);
      report.telescoped_phi += v2.delta_phi;
      report.telescoped_psi += v2.delta_psi;
      record(report, step_no, v2, moved);
      off = std::move(next);
      checker.check(state, off, step_no, "after stage 2", true);
    }
  }
  report.summary.steps = inst.m();
  report.final = total_potential(PairState::of(state, off), params);
  return report;
}

LowerBoundReport run_lowerbound(const PhaseConfig& config) {
  config.validate();
  const LowerBoundPlay play = play_lower_bound(config);
  const LbOfflinePlay off = lb_offline_strategy(config, play.initial, play.phases);

  LowerBoundReport report;
  report.config = config;
  report.setup_cost = off.setup_cost;
  report.kept_size = off.kept.size();
  report.threshold = Rational(std::int64_t{config.r} * config.r, 3);
  report.recorded = play.recorded;

  const int n = config.n();
  const Cost alg_floor = Cost{config.c + config.r} * (n - config.r);
  const Cost off_ceiling = 3 * Cost{config.c} + 3 * Cost{config.r};
  const Rational window_cap(n - config.r + 1);
  const Cost r2 = Cost{config.r} * config.r;

  bool all_ok = true;
  for (std::size_t k = 0; k < play.phases.size(); ++k) {
    const PhaseRecord& rec = play.phases[k];
    LowerBoundPhaseRow row;
    row.phase = static_cast<int>(k) + 1;
    row.alg_cost = rec.alg_cost;
    row.off_cost = off.phase_costs[k];
    report.alg_cost += row.alg_cost;
    report.off_cost += row.off_cost;
    row.cumulative_alg = report.alg_cost;
    row.cumulative_off = report.off_cost;
    row.cumulative_ratio = static_cast<double>(row.cumulative_alg) / row.cumulative_off;
    row.cumulative_ratio_with_setup =
        static_cast<double>(row.cumulative_alg) / (row.cumulative_off + report.setup_cost);
    row.alg_lower_bound_ok = row.alg_cost >= alg_floor;
    row.off_upper_bound_ok = row.off_cost <= off_ceiling;
    row.structure_ok = rec.budgets_zero_after && rec.front_is_cyclic_shift && rec.others_shifted_by_block;
    row.budget_thresholds_ok = rec.window_budget_max_after_c <= window_cap && rec.window_budget_min_at_last >= n;
    if (report.crossing_phase < 0 && 3 * row.cumulative_alg >= r2 * (row.cumulative_off + report.setup_cost)) {
      report.crossing_phase = row.phase;
    }
    all_ok = all_ok && row.alg_lower_bound_ok && row.off_upper_bound_ok && row.structure_ok && row.budget_thresholds_ok;
    report.phases.push_back(row);
  }
  report.ratio = static_cast<double>(report.alg_cost) / report.off_cost;
  report.ratio_with_setup = static_cast<double>(report.alg_cost) / (report.off_cost + report.setup_cost);
  report.pass = all_ok && 3 * report.alg_cost >= r2 * report.off_cost;
  return report;
}

OracleReport run_oracle(const ExperimentConfig& config) {
  const Instance inst = config.resolve_instance();
  if (inst.n() > kMaxDynamicOracleN) {
    throw Error(ErrorCode::kOracleTooLarge, "oracle comparison supports n <= " + std::to_string(kMaxDynamicOracleN) +
                                                ", got n=" + std::to_string(inst.n()));
  }
  OracleReport rep;
  AlgState state = config.initial_state(inst);
  for (const Request& req : inst.requests) rep.dlm_cost += serve(state, req).total();

  const OptResult opt = opt_dynamic_bruteforce(inst);
  rep.opt_cost = opt.cost;
  rep.off_star_cost = derive_mtfb_from_opt(inst, opt).total();
  const Instance singles = singleton_reduction(inst, opt);
  std::vector<Element> mtf_choices;
  for (const Request& req : singles.requests) mtf_choices.push_back(req.elements().front());
  rep.mtf_singleton_cost = mtfb_replay(singles, mtf_choices).total();

  const FixedResult best = best_fixed_permutation(inst);
  rep.best_fixed = best.perm;
  rep.best_fixed_cost = best.cost;
  const PotentialParams params = PotentialParams::for_r(inst.r);
  rep.static_initial = total_potential(PairState::of(config.initial_state(inst), best.perm), params);
  rep.static_bound = params.stage1_coefficient() * best.cost + rep.static_initial.sum();

  rep.off_star_within_4opt = rep.off_star_cost <= 4 * rep.opt_cost;
  rep.dlm_within_static_bound = Rational(rep.dlm_cost) <= rep.static_bound;
  return rep;
}

// ---------------------------------------------------------------- writers

void write_trace_csv(std::ostream& os, const SimulationResult& sim) {
  os << "schema,side,step,access,reorder,ell,fetched,cumulative\n";
  Cost cum = 0;
  for (std::size_t t = 0; t < sim.steps.size(); ++t) {
    const StepReport& s = sim.steps[t];
    cum += s.total();
    os << kSchemaVersion << ",ALG," << t + 1 << ',' << s.access << ',' << s.reorder << ',' << s.ell << ','
       << s.fetched.size() << ',' << cum << '\n';
  }
  if (!sim.baseline) return;
  const OfflineTrace& off = *sim.baseline;
  cum = off.initial_reorder;
  if (off.initial_reorder > 0) os << kSchemaVersion << ",OFF,0,0," << off.initial_reorder << ",,0," << cum << '\n';
  for (std::size_t t = 0; t < off.steps.size(); ++t) {
    const OfflineStep& s = off.steps[t];
    cum += s.access + s.reorder;
    os << kSchemaVersion << ",OFF," << t + 1 << ',' << s.access << ',' << s.reorder << ",," << (s.moved ? 1 : 0)
       << ',' << cum << '\n';
  }
}

}  // namespace mssc
