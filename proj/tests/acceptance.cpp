// Acceptance suite: one PASS/FAIL line per criterion. All checks are exact;
// the only tolerances are the wall-clock limits below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mssc/harness.hpp"
#include "oracles.hpp"

using namespace mssc;

namespace {

constexpr double kLimitInvariants = 60.0;  // seconds, criteria 1, 2, 4
constexpr double kLimitSweeps = 60.0;      // criterion 3
constexpr double kLimitStageCampaign = 300.0;  // criteria 5, 6
constexpr double kLimitOracle = 300.0;     // criteria 7, 8, 10
constexpr double kLimitLowerBound = 60.0;  // criterion 9

constexpr int kInvariantInstances = 1000;
constexpr int kStageInstances = 1000;
constexpr int kOracleInstances = 500;
constexpr int kLowerBoundPhases = 20;

int failures = 0;
std::string lines[11];

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  lines[id] = std::string(pass ? "PASS" : "FAIL") + " criterion " + std::to_string(id) + ": " + what + " (" + detail + ")";
  if (!pass) ++failures;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::int64_t pow2(int k) { return std::int64_t{1} << k; }

// Budget bounds observed inside serve(), checked independently of the audit.
class BudgetWatch : public ServeObserver {
 public:
  void after_fetch(const AlgState& s, Element, Cost) override { check(s); }
  void after_increment(const AlgState& s, Element) override { check(s); }
  int mid_violations = 0;

 private:
  void check(const AlgState& s) {
    for (Element z = 0; z < s.size(); ++z) {
      if (!(s.budget(z) * 2 < Rational(3) * s.permutation().position(z))) ++mid_violations;
    }
  }
};

struct InvariantRow {
  int loop_violations = 0;
  int end_violations = 0;
  int mid_violations = 0;
  int potential_violations = 0;
  int fetch_checks = 0;
  int fetch_failures = 0;
  int max_iterations = 0;
};

// Instance i of the criterion-1 campaign: n <= 50, r <= 8, m <= 200. The
// audit's offline side moves a random requested element to the front.
InvariantRow invariant_run(std::size_t i) {
  std::mt19937_64 rng(1000003 * i + 17);
  const int n = 1 + static_cast<int>(rng() % 50);
  const int r = 1 + static_cast<int>(rng() % std::min(n, 8));
  const int m = 1 + static_cast<int>(rng() % 200);
  const auto dist = i % 3 == 0 ? RequestDistribution::zipf(1.2) : RequestDistribution::uniform();
  const Instance inst = random_instance(n, r, m, dist, i);

  InvariantRow row;
  AlgState s(inst.initial);
  BudgetWatch watch;
  for (const Request& req : inst.requests) {
    const StepReport rep = serve(s, req, &watch);
    row.max_iterations = std::max(row.max_iterations, rep.cascade_iterations);
    if (rep.cascade_iterations > n) ++row.loop_violations;
    for (Element z = 0; z < n; ++z) {
      if (!(s.budget(z) < s.permutation().position(z))) ++row.end_violations;
    }
  }
  row.mid_violations = watch.mid_violations;

  ExperimentConfig cfg;
  cfg.instance = inst;
  cfg.baseline = Baseline::kMtfbChoices;
  for (const Request& req : inst.requests) cfg.choices.push_back(req.elements()[rng() % req.size()]);
  const AuditReport audit = run_audit(cfg);
  row.potential_violations = static_cast<int>(audit.invariant_violations.size());
  for (const AuditRecord& rec : audit.records) {
    if (rec.verdict.stage != AuditStage::kFetch) continue;
    ++row.fetch_checks;
    if (!rec.verdict.pass) ++row.fetch_failures;
  }
  return row;
}

void criteria_1_2_4() {
  Stopwatch clock;
  const auto rows = run_indexed<InvariantRow>(kInvariantInstances, invariant_run);
  const double secs = clock.seconds();
  InvariantRow sum;
  for (const InvariantRow& r : rows) {
    sum.loop_violations += r.loop_violations;
    sum.end_violations += r.end_violations;
    sum.mid_violations += r.mid_violations;
    sum.potential_violations += r.potential_violations;
    sum.fetch_checks += r.fetch_checks;
    sum.fetch_failures += r.fetch_failures;
    sum.max_iterations = std::max(sum.max_iterations, r.max_iterations);
  }
  const bool in_time = secs < kLimitInvariants;
  report(1, in_time && sum.loop_violations == 0 && sum.end_violations == 0 && sum.mid_violations == 0,
         "termination within n iterations, b < pi after each step, b < 1.5 pi mid-step",
         fmt("%d instances, max iterations %d, violations loop=%d end=%d mid=%d, %.1fs of %.0fs",
             kInvariantInstances, sum.max_iterations, sum.loop_violations, sum.end_violations, sum.mid_violations,
             secs, kLimitInvariants));
  report(2, sum.potential_violations == 0, "Phi_z >= 0 and Psi_z >= 0 at every audited checkpoint",
         fmt("%d violations", sum.potential_violations));
  report(4, in_time && sum.fetch_checks > 0 && sum.fetch_failures == 0, "every fetch within 2 pi(z)",
         fmt("%d fetches audited, %d failures", sum.fetch_checks, sum.fetch_failures));
}

// Budgets on the grid k / lcm(1..r) below 1.5 pos. Every grid point is taken
// for small positions; beyond that a stride keeps the count bounded, always
// including both ends (the deltas are affine in the budget).
std::vector<Rational> budget_grid(std::int64_t pos, std::int64_t den) {
  const std::int64_t top = (3 * pos * den - 1) / 2;  // largest k with k/den < 1.5 pos
  const std::int64_t stride = pos <= 64 ? 1 : std::max<std::int64_t>(1, top / 32);
  std::vector<Rational> out;
  for (std::int64_t k = 0; k < top; k += stride) out.emplace_back(k, den);
  out.emplace_back(top, den);
  return out;
}

void criterion_3() {
  Stopwatch clock;
  long long checks = 0;
  int online_failures = 0, offline_failures = 0;
  std::string first;
  for (int r = 1; r <= 3; ++r) {
    const PotentialParams pp = PotentialParams::for_r(r);
    const std::int64_t top = pow2(pp.kappa + 3);
    const std::int64_t den = r == 3 ? 6 : r;
    const Rational unsafe_cap = pp.beta * 3;
    for (std::int64_t pos = 1; pos <= top; ++pos) {
      const std::vector<Rational> grid = budget_grid(pos, den);
      for (std::int64_t off = 1; off <= top; ++off) {
        // Online shift pos -> pos + 1 with the budget carried along.
        if (pos < top) {
          const Rational cap = element_is_safe(pos, off, pp) ? Rational(0) : unsafe_cap;
          const Rational dpsi = element_psi(pos + 1, off, pp) - element_psi(pos, off, pp);
          for (const Rational& b : grid) {
            ++checks;
            if (element_phi(pos + 1, off, b, pp) - element_phi(pos, off, b, pp) + dpsi > cap) {
              if (online_failures++ == 0) first = fmt("online r=%d pos=%lld off=%lld", r, (long long)pos, (long long)off);
            }
          }
        }
        // Offline shift off -> off + 1, online state fixed.
        if (off < top) {
          ++checks;
          if (element_psi(pos, off + 1, pp) > element_psi(pos, off, pp)) ++offline_failures;
          for (const Rational& b : {grid.front(), grid.back()}) {
            ++checks;
            if (element_phi(pos, off + 1, b, pp) > element_phi(pos, off, b, pp)) {
              if (offline_failures++ == 0 && first.empty()) {
                first = fmt("offline r=%d pos=%lld off=%lld", r, (long long)pos, (long long)off);
              }
            }
          }
        }
      }
    }
  }
  const double secs = clock.seconds();
  report(3, online_failures == 0 && offline_failures == 0 && secs < kLimitSweeps,
         "per-element shift bounds: online <= 0 safe / <= 3 beta unsafe, offline deltas <= 0",
         fmt("r=1..3, positions to 2^(kappa+3), %lld checks, failures online=%d offline=%d%s%s, %.1fs of %.0fs",
             checks, online_failures, offline_failures, first.empty() ? "" : ", first ", first.c_str(), secs,
             kLimitSweeps));
}

struct StageRow {
  int stage1 = 0, stage1_fail = 0;
  int stage2 = 0, stage2_fail = 0;
};

StageRow stage_run(std::size_t i) {
  std::mt19937_64 rng(7919 * i + 3);
  const int n = 1 + static_cast<int>(rng() % 6);
  const int r = 1 + static_cast<int>(rng() % n);
  const int m = 1 + static_cast<int>(rng() % 10);
  ExperimentConfig cfg;
  cfg.instance = random_instance(n, r, m, i % 2 ? RequestDistribution::zipf(1.0) : RequestDistribution::uniform(),
                                 50000 + i);
  cfg.baseline = Baseline::kMtfbFromOpt;
  const AuditReport rep = run_audit(cfg);
  StageRow row;
  for (const AuditRecord& rec : rep.records) {
    if (rec.verdict.stage == AuditStage::kStage1) {
      ++row.stage1;
      row.stage1_fail += !rec.verdict.pass;
    } else if (rec.verdict.stage == AuditStage::kStage2) {
      ++row.stage2;
      row.stage2_fail += !rec.verdict.pass;
    }
  }
  return row;
}

void criteria_5_6() {
  Stopwatch clock;
  const auto rows = run_indexed<StageRow>(kStageInstances, stage_run);
  const double secs = clock.seconds();
  StageRow sum;
  for (const StageRow& r : rows) {
    sum.stage1 += r.stage1;
    sum.stage1_fail += r.stage1_fail;
    sum.stage2 += r.stage2;
    sum.stage2_fail += r.stage2_fail;
  }
  const PotentialParams p2 = PotentialParams::for_r(2);
  const bool coefficient_ok = p2.stage1_coefficient() == Rational(1280);
  const bool in_time = secs < kLimitStageCampaign;
  report(5, in_time && coefficient_ok && sum.stage1 > 0 && sum.stage1_fail == 0,
         "stage-1 inequality with coefficient (3+alpha) 2^(kappa+1)",
         fmt("%d instances n<=6, %d steps, %d failures, r=2 coefficient %s, %.1fs of %.0fs", kStageInstances,
             sum.stage1, sum.stage1_fail, p2.stage1_coefficient().str().c_str(), secs, kLimitStageCampaign));
  report(6, in_time && sum.stage2 > 0 && sum.stage2_fail == 0, "stage-2 inequality with coefficient beta 2^(kappa+3)",
         fmt("%d offline moves, %d failures, r=2 coefficient %s", sum.stage2, sum.stage2_fail,
             p2.stage2_coefficient().str().c_str()));
}

struct OracleRow {
  OracleReport report;
  bool literal_opt_le_fixed = true;  // OPT <= best fixed access cost
  bool fixed_is_minimum = true;      // best fixed <= every fixed list
  bool opt_recomputes = true;
  bool opt_le_start_list = true;     // OPT <= access cost of serving from the start list
};

Instance oracle_instance(std::size_t i) {
  std::mt19937_64 rng(104729 * i + 11);
  const int n = 1 + static_cast<int>(rng() % 5);
  const int r = 1 + static_cast<int>(rng() % n);
  const int m = 1 + static_cast<int>(rng() % 6);
  return random_instance(n, r, m, RequestDistribution::uniform(), 90000 + i);
}

OracleRow oracle_run(std::size_t i) {
  const Instance inst = oracle_instance(i);
  ExperimentConfig cfg;
  cfg.instance = inst;
  OracleRow row;
  row.report = run_oracle(cfg);

  const OptResult opt = opt_dynamic_bruteforce(inst);
  Cost recomputed = 0;
  for (int t = 0; t < inst.m(); ++t) {
    recomputed += access_cost(opt.perms[t], inst.requests[t]) + inversion_distance(opt.perms[t], opt.perms[t + 1]);
  }
  row.opt_recomputes = recomputed == opt.cost && opt.perms.front() == inst.initial;

  const Cost best = row.report.best_fixed_cost;
  row.literal_opt_le_fixed = opt.cost <= best;
  for (const Permutation& sigma : mssc::testing::all_permutations(inst.n())) {
    if (fixed_access_cost(inst, sigma) < best) row.fixed_is_minimum = false;
  }
  row.opt_le_start_list = opt.cost <= fixed_access_cost(inst, inst.initial);
  return row;
}

void criteria_7_8_10() {
  Stopwatch clock;
  const auto rows = run_indexed<OracleRow>(kOracleInstances, oracle_run);
  const double secs = clock.seconds();
  const bool in_time = secs < kLimitOracle;

  int off_star_fail = 0, static_fail = 0;
  Rational worst_off_star_ratio(0);
  for (const OracleRow& r : rows) {
    const OracleReport& o = r.report;
    if (!(o.off_star_cost <= 4 * o.opt_cost)) ++off_star_fail;
    if (o.opt_cost > 0) worst_off_star_ratio = std::max(worst_off_star_ratio, Rational(o.off_star_cost, o.opt_cost));
    if (!o.dlm_within_static_bound || !(Rational(o.dlm_cost) <= o.static_bound)) ++static_fail;
  }
  report(7, in_time && off_star_fail == 0, "OFF* <= 4 OPT",
         fmt("%d instances n<=5 m<=6, %d failures, worst OFF*/OPT %s, %.1fs of %.0fs", kOracleInstances,
             off_star_fail, worst_off_star_ratio.str().c_str(), secs, kLimitOracle));
  report(8, static_fail == 0, "DLM <= (3+alpha) 2^(kappa+1) bestFixed + Phi0 + Psi0",
         fmt("%d instances, %d failures", kOracleInstances, static_fail));

  int literal_fail = 0, minimum_fail = 0, recompute_fail = 0, start_fail = 0;
  for (const OracleRow& r : rows) {
    literal_fail += !r.literal_opt_le_fixed;
    minimum_fail += !r.fixed_is_minimum;
    recompute_fail += !r.opt_recomputes;
    start_fail += !r.opt_le_start_list;
  }
  // Smallest witness: the fixed comparator may start on its own list, OPT
  // has to pay to leave the start list.
  const Instance witness = mssc::testing::make_instance({0, 1}, 1, {{1}});
  const Cost w_opt = opt_dynamic_bruteforce(witness).cost;
  const Cost w_fixed = best_fixed_permutation(witness).cost;
  const bool literal_ok = literal_fail == 0 && w_opt <= w_fixed;
  report(10, literal_ok && minimum_fail == 0 && recompute_fail == 0,
         "OPT <= best fixed <= any fixed list, OPT trace recomputes",
         fmt("OPT > best fixed on %d of %d instances; start (a,b), requests [{b}]: OPT=%lld, best fixed=%lld; "
             "best fixed not minimal %d, trace mismatches %d, OPT > start-list cost %d",
             literal_fail, kOracleInstances, (long long)w_opt, (long long)w_fixed, minimum_fail, recompute_fail,
             start_fail));
}

void criterion_9() {
  Stopwatch clock;
  bool all = true;
  std::ostringstream detail;
  for (auto [r, c] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 3}, {4, 2}}) {
    const LowerBoundReport rep = run_lowerbound(PhaseConfig{r, c, kLowerBoundPhases});
    bool a = true, b = true, d = true;
    for (const LowerBoundPhaseRow& row : rep.phases) {
      a = a && row.alg_cost >= Cost{c + r} * (rep.config.n() - r);
      b = b && row.off_cost <= 3 * Cost{c} + 3 * Cost{r};
      d = d && row.structure_ok && row.budget_thresholds_ok;
    }
    const bool cr = 3 * rep.alg_cost >= Cost{r} * r * rep.off_cost;
    const bool ok = a && b && cr && d && static_cast<int>(rep.phases.size()) == kLowerBoundPhases;
    all = all && ok;
    detail << (detail.tellp() > 0 ? "; " : "") << fmt("(%d,%d) %s ratio %.2f vs %.2f, with setup %.2f", r, c,
                                                     ok ? "ok" : "FAIL", rep.ratio, r * r / 3.0, rep.ratio_with_setup);
  }
  const double secs = clock.seconds();
  detail << fmt(", %.1fs of %.0fs", secs, kLimitLowerBound);
  report(9, all && secs < kLimitLowerBound, "lower-bound phases: cost floor, offline ceiling, ratio >= r^2/3, structure",
         detail.str());
}

}  // namespace

int main() {
  criteria_1_2_4();
  criterion_3();
  criteria_5_6();
  criteria_7_8_10();
  criterion_9();
  for (int id = 1; id <= 10; ++id) std::printf("%s\n", lines[id].c_str());
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
