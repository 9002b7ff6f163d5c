#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mssc/harness.hpp"

namespace mssc {
namespace {

using nlohmann::ordered_json;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

ordered_json order_json(const Permutation& p) { return std::vector<Element>(p.order().begin(), p.order().end()); }

ordered_json verdict_json(const AuditRecord& rec) {
  const AuditVerdict& v = rec.verdict;
  ordered_json j;
  j["step"] = rec.step;
  j["stage"] = stage_name(v.stage);
  if (rec.element >= 0) j["element"] = rec.element;
  j["dDLM"] = v.delta_alg.str();
  j["dPhi"] = v.delta_phi.str();
  j["dPsi"] = v.delta_psi.str();
  j["dOFF"] = v.delta_off.str();
  j["bound"] = v.bound.str();
  j["verdict"] = v.pass ? "PASS" : "FAIL";
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

}  // namespace

void write_trace_json(std::ostream& os, const SimulationResult& sim) {
  ordered_json doc;
  doc["schema"] = kSchemaVersion;
  ordered_json alg;
  alg["side"] = "ALG";
  alg["total"] = sim.alg_cost;
  ordered_json steps = ordered_json::array();
  Cost cum = 0;
  for (std::size_t t = 0; t < sim.steps.size(); ++t) {
    const StepReport& s = sim.steps[t];
    cum += s.total();
    ordered_json j;
    j["step"] = t + 1;
    j["access"] = s.access;
    j["reorder"] = s.reorder;
    j["ell"] = s.ell;
    ordered_json fetched = ordered_json::array();
    for (const FetchRecord& f : s.fetched) fetched.push_back({f.element, f.from});
    j["fetched"] = std::move(fetched);
    ordered_json inc = ordered_json::array();
    for (const BudgetIncrement& b : s.budget_increments) inc.push_back({b.element, b.delta.str()});
    j["budget_increments"] = std::move(inc);
    j["cumulative"] = cum;
    steps.push_back(std::move(j));
  }
  alg["steps"] = std::move(steps);
  alg["final_list"] = order_json(sim.alg_perms.back());
  doc["alg"] = std::move(alg);

  if (sim.baseline) {
    const OfflineTrace& t = *sim.baseline;
    ordered_json off;
    off["side"] = "OFF";
    off["total"] = t.total();
    off["initial_reorder"] = t.initial_reorder;
    ordered_json rows = ordered_json::array();
    Cost c = t.initial_reorder;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const OfflineStep& s = t.steps[i];
      c += s.access + s.reorder;
      ordered_json j;
      j["step"] = i + 1;
      j["access"] = s.access;
      j["reorder"] = s.reorder;
      j["moved"] = s.moved ? ordered_json(*s.moved) : ordered_json(nullptr);
      j["cumulative"] = c;
      rows.push_back(std::move(j));
    }
    off["steps"] = std::move(rows);
    doc["off"] = std::move(off);
    doc["ratio"] = sim.ratio ? ordered_json(fmt(*sim.ratio)) : ordered_json(nullptr);
  }
  os << doc.dump(1) << '\n';
}

void write_audit_csv(std::ostream& os, const AuditReport& report) {
  os << "schema,step,stage,element,dDLM,dPhi,dPsi,dOFF,bound,verdict\n";
  for (const AuditRecord& rec : report.records) {
    const AuditVerdict& v = rec.verdict;
    os << kSchemaVersion << ',' << rec.step << ',' << stage_name(v.stage) << ',';
    if (rec.element >= 0) os << rec.element;
    os << ',' << v.delta_alg << ',' << v.delta_phi << ',' << v.delta_psi << ',' << v.delta_off << ',' << v.bound
       << ',' << (v.pass ? "PASS" : "FAIL") << '\n';
  }
}

void write_audit_json(std::ostream& os, const AuditReport& report) {
  ordered_json doc;
  doc["schema"] = kSchemaVersion;
  ordered_json records = ordered_json::array();
  for (const AuditRecord& rec : report.records) records.push_back(verdict_json(rec));
  doc["records"] = std::move(records);
  ordered_json summary;
  summary["steps"] = report.summary.steps;
  summary["checks"] = report.summary.checks;
  summary["failures"] = report.summary.failures;
  summary["max_slack_ratio"] = fmt(report.summary.max_slack_ratio);
  summary["first_failure_step"] = report.summary.first_failure_step;
  summary["alg_cost"] = report.alg_cost;
  summary["off_cost"] = report.off_cost;
  summary["initial_phi"] = report.initial.phi.str();
  summary["initial_psi"] = report.initial.psi.str();
  summary["final_phi"] = report.final.phi.str();
  summary["final_psi"] = report.final.psi.str();
  summary["max_cascade_iterations"] = report.max_cascade_iterations;
  summary["invariant_violations"] = report.invariant_violations;
  doc["summary"] = std::move(summary);
  os << doc.dump(1) << '\n';
}

void write_lowerbound_csv(std::ostream& os, const LowerBoundReport& report) {
  os << "schema,r,c,n,phases,alg_cost,off_cost,setup_cost,ratio,ratio_with_setup,threshold,crossing_phase,pass\n";
  const PhaseConfig& c = report.config;
  os << kSchemaVersion << ',' << c.r << ',' << c.c << ',' << c.n() << ',' << c.phases << ',' << report.alg_cost << ','
     << report.off_cost << ',' << report.setup_cost << ',' << fmt(report.ratio) << ','
     << fmt(report.ratio_with_setup) << ',' << report.threshold << ',' << report.crossing_phase << ','
     << (report.pass ? "PASS" : "FAIL") << '\n';
}

void write_lowerbound_phases_csv(std::ostream& os, const LowerBoundReport& report) {
  os << "schema,phase,alg_cost,off_cost,cumulative_alg,cumulative_off,cumulative_ratio,cumulative_ratio_with_setup,"
        "alg_bound_ok,off_bound_ok,structure_ok,budget_thresholds_ok\n";
  for (const LowerBoundPhaseRow& row : report.phases) {
    os << kSchemaVersion << ',' << row.phase << ',' << row.alg_cost << ',' << row.off_cost << ',' << row.cumulative_alg
       << ',' << row.cumulative_off << ',' << fmt(row.cumulative_ratio) << ','
       << fmt(row.cumulative_ratio_with_setup) << ',' << row.alg_lower_bound_ok << ',' << row.off_upper_bound_ok
       << ',' << row.structure_ok << ',' << row.budget_thresholds_ok << '\n';
  }
}

void write_lowerbound_json(std::ostream& os, const LowerBoundReport& report) {
  ordered_json doc;
  const PhaseConfig& c = report.config;
  doc["schema"] = kSchemaVersion;
  doc["r"] = c.r;
  doc["c"] = c.c;
  doc["n"] = c.n();
  doc["phases"] = c.phases;
  doc["alg_cost"] = report.alg_cost;
  doc["off_cost"] = report.off_cost;
  doc["setup_cost"] = report.setup_cost;
  doc["ratio"] = fmt(report.ratio);
  doc["ratio_with_setup"] = fmt(report.ratio_with_setup);
  doc["threshold"] = report.threshold.str();
  doc["crossing_phase"] = report.crossing_phase;
  doc["kept_size"] = report.kept_size;
  doc["pass"] = report.pass;
  ordered_json rows = ordered_json::array();
  for (const LowerBoundPhaseRow& row : report.phases) {
    ordered_json j;
    j["phase"] = row.phase;
    j["alg_cost"] = row.alg_cost;
    j["off_cost"] = row.off_cost;
    j["cumulative_ratio"] = fmt(row.cumulative_ratio);
    j["cumulative_ratio_with_setup"] = fmt(row.cumulative_ratio_with_setup);
    j["alg_bound_ok"] = row.alg_lower_bound_ok;
    j["off_bound_ok"] = row.off_upper_bound_ok;
    j["structure_ok"] = row.structure_ok;
    j["budget_thresholds_ok"] = row.budget_thresholds_ok;
    rows.push_back(std::move(j));
  }
  doc["per_phase"] = std::move(rows);
  os << doc.dump(1) << '\n';
}

void write_oracle_csv_header(std::ostream& os) {
  os << "schema,instance,dlm,opt,four_opt,off_star,mtf_singleton,best_fixed,phi0,psi0,static_bound,"
        "dlm_over_opt,dlm_over_best_fixed,off_star_over_opt,off_star_ok,static_ok\n";
}

void write_oracle_csv_row(std::ostream& os, std::size_t index, const OracleReport& r) {
  auto ratio = [](Cost a, Cost b) { return b > 0 ? fmt(static_cast<double>(a) / b) : std::string(); };
  os << kSchemaVersion << ',' << index << ',' << r.dlm_cost << ',' << r.opt_cost << ',' << 4 * r.opt_cost << ','
     << r.off_star_cost << ',' << r.mtf_singleton_cost << ',' << r.best_fixed_cost << ',' << r.static_initial.phi
     << ',' << r.static_initial.psi << ',' << r.static_bound << ',' << ratio(r.dlm_cost, r.opt_cost) << ','
     << ratio(r.dlm_cost, r.best_fixed_cost) << ',' << ratio(r.off_star_cost, r.opt_cost) << ','
     << (r.off_star_within_4opt ? "PASS" : "FAIL") << ',' << (r.dlm_within_static_bound ? "PASS" : "FAIL") << '\n';
}

void write_oracle_json(std::ostream& os, const std::vector<OracleReport>& reports) {
  ordered_json doc;
  doc["schema"] = kSchemaVersion;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const OracleReport& r = reports[i];
    ordered_json j;
    j["instance"] = i;
    j["dlm"] = r.dlm_cost;
    j["opt"] = r.opt_cost;
    j["four_opt"] = 4 * r.opt_cost;
    j["off_star"] = r.off_star_cost;
    j["mtf_singleton"] = r.mtf_singleton_cost;
    j["best_fixed"] = r.best_fixed_cost;
    j["best_fixed_list"] = order_json(r.best_fixed);
    j["phi0"] = r.static_initial.phi.str();
    j["psi0"] = r.static_initial.psi.str();
    j["static_bound"] = r.static_bound.str();
    j["off_star_ok"] = r.off_star_within_4opt;
    j["static_ok"] = r.dlm_within_static_bound;
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(1) << '\n';
}

}  // namespace mssc
