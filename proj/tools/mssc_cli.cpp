// mssc: simulate, audit, and benchmark the lazy move-to-front algorithm for
// online min-sum set cover.
//
// Exit codes: 0 all checks pass, 1 an audit or bound check failed,
// 2 configuration or I/O error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "mssc/harness.hpp"
#include "mssc/instance_io.hpp"

namespace fs = std::filesystem;
using namespace mssc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

struct CommonOptions {
  std::string out;
  std::uint64_t seed = 0;
  std::string format = "csv";
};

struct InstanceOptions {
  std::string instance;
  int n = 8;
  int r = 2;
  int m = 20;
  std::string dist = "uniform";
  std::string algorithm = "dlm";
  int c = 1;
  std::string baseline = "none";
  std::string choices;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--out", opts.out, "Output directory (stdout when omitted)");
  cmd->add_option("--seed", opts.seed, "64-bit seed for generated instances");
  cmd->add_option("--format", opts.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
}

void add_instance(CLI::App* cmd, InstanceOptions& opts, bool with_baseline) {
  cmd->add_option("--instance", opts.instance, "Instance JSON file; otherwise one is generated");
  cmd->add_option("--n", opts.n, "Generated universe size");
  cmd->add_option("--r", opts.r, "Generated maximum request size");
  cmd->add_option("--m", opts.m, "Generated request count");
  cmd->add_option("--dist", opts.dist, "Generated element distribution: uniform | zipf:<s>");
  cmd->add_option("--algorithm", opts.algorithm, "dlm | dlm_c")->check(CLI::IsMember({"dlm", "dlm_c"}));
  cmd->add_option("--c", opts.c, "Budget divisor for dlm_c");
  if (with_baseline) {
    cmd->add_option("--baseline", opts.baseline, "none | opt | best_fixed | mtfb_from_opt | mtfb_choices");
    cmd->add_option("--choices", opts.choices, "JSON array of per-step elements for mtfb_choices");
  }
}

std::vector<Element> load_choices(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  try {
    return nlohmann::json::parse(in).get<std::vector<Element>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadConfig, path + ": " + e.what());
  }
}

ExperimentConfig make_config(const InstanceOptions& io, const CommonOptions& common) {
  ExperimentConfig config;
  if (!io.instance.empty()) {
    config.instance_path = io.instance;
  } else {
    config.generator = GeneratorSpec{io.n, io.r, io.m, RequestDistribution::parse(io.dist)};
  }
  config.algorithm = parse_algorithm(io.algorithm);
  config.c = io.c;
  config.baseline = parse_baseline(io.baseline);
  if (!io.choices.empty()) config.choices = load_choices(io.choices);
  config.seed = common.seed;
  return config;
}

// Writes `body` to <out>/<name>, or to stdout when no directory was given.
template <typename Fn>
void emit(const CommonOptions& common, const std::string& name, Fn&& body) {
  if (common.out.empty()) {
    body(std::cout);
    return;
  }
  fs::create_directories(common.out);
  const fs::path path = fs::path(common.out) / name;
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  body(out);
}

bool json_format(const CommonOptions& common) { return parse_format(common.format) == OutputFormat::kJson; }

int cmd_gen(const InstanceOptions& io, const CommonOptions& common) {
  const Instance inst = random_instance(io.n, io.r, io.m, RequestDistribution::parse(io.dist), common.seed);
  emit(common, "instance.json", [&](std::ostream& os) { os << instance_to_json(inst) << '\n'; });
  return kExitOk;
}

int cmd_simulate(const InstanceOptions& io, const CommonOptions& common) {
  const SimulationResult sim = run_simulate(make_config(io, common));
  if (json_format(common)) {
    emit(common, "trace.json", [&](std::ostream& os) { write_trace_json(os, sim); });
  } else {
    emit(common, "trace.csv", [&](std::ostream& os) { write_trace_csv(os, sim); });
  }
  if (!common.out.empty()) {
    std::cerr << "alg_cost=" << sim.alg_cost;
    if (sim.baseline) std::cerr << " baseline_cost=" << sim.baseline->total();
    std::cerr << '\n';
  }
  return kExitOk;
}

int cmd_audit(const InstanceOptions& io, const CommonOptions& common, bool no_fetch_audits) {
  ExperimentConfig config = make_config(io, common);
  config.audit_fetches = !no_fetch_audits;
  const AuditReport report = run_audit(config);
  if (json_format(common)) {
    emit(common, "audit.json", [&](std::ostream& os) { write_audit_json(os, report); });
  } else {
    emit(common, "audit.csv", [&](std::ostream& os) { write_audit_csv(os, report); });
  }
  std::cerr << "checks=" << report.summary.checks << " failures=" << report.summary.failures
            << " invariant_violations=" << report.invariant_violations.size() << '\n';
  if (!report.all_passed()) {
    if (report.summary.first_failure_step >= 0) {
      std::cerr << "first failure at step " << report.summary.first_failure_step << '\n';
    }
    for (const auto& v : report.invariant_violations) std::cerr << v << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_oracle(const InstanceOptions& io, const CommonOptions& common, int instances, unsigned workers) {
  if (instances < 1) throw Error(ErrorCode::kBadConfig, "--instances must be positive");
  if (instances > 1 && !io.instance.empty()) {
    throw Error(ErrorCode::kBadConfig, "--instances > 1 needs a generated instance");
  }
  const ExperimentConfig base = make_config(io, common);
  const auto reports = run_indexed<OracleReport>(
      static_cast<std::size_t>(instances),
      [&](std::size_t i) {
        ExperimentConfig config = base;
        config.seed = common.seed + i;
        return run_oracle(config);
      },
      workers);
  if (json_format(common)) {
    emit(common, "oracle.json", [&](std::ostream& os) { write_oracle_json(os, reports); });
  } else {
    emit(common, "oracle.csv", [&](std::ostream& os) {
      write_oracle_csv_header(os);
      for (std::size_t i = 0; i < reports.size(); ++i) write_oracle_csv_row(os, i, reports[i]);
    });
  }
  for (const auto& r : reports) {
    if (!r.off_star_within_4opt || !r.dlm_within_static_bound) return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_lowerbound(int r, int c, int phases, const CommonOptions& common, bool export_instance) {
  const LowerBoundReport report = run_lowerbound(PhaseConfig{r, c, phases});
  if (json_format(common)) {
    emit(common, "lowerbound.json", [&](std::ostream& os) { write_lowerbound_json(os, report); });
  } else {
    emit(common, "lowerbound.csv", [&](std::ostream& os) { write_lowerbound_csv(os, report); });
    if (!common.out.empty()) {
      emit(common, "lowerbound_phases.csv", [&](std::ostream& os) { write_lowerbound_phases_csv(os, report); });
    }
  }
  if (export_instance) {
    emit(common, "lowerbound_instance.json", [&](std::ostream& os) { os << instance_to_json(report.recorded) << '\n'; });
  }
  return report.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online min-sum set cover: lazy move-to-front simulator, potential auditor and benchmarks"};
  app.require_subcommand(1);

  CommonOptions common;
  InstanceOptions io;

  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  add_common(gen, common);
  gen->add_option("--n", io.n, "Universe size");
  gen->add_option("--r", io.r, "Maximum request size");
  gen->add_option("--m", io.m, "Request count");
  gen->add_option("--dist", io.dist, "uniform | zipf:<s>");

  auto* simulate = app.add_subcommand("simulate", "Run the online algorithm and an optional baseline");
  add_common(simulate, common);
  add_instance(simulate, io, true);

  bool no_fetch_audits = false;
  auto* audit = app.add_subcommand("audit", "Check every amortized inequality step by step");
  add_common(audit, common);
  add_instance(audit, io, true);
  audit->add_flag("--no-fetch-audits", no_fetch_audits, "Skip the per-fetch audits");

  int instances = 1;
  unsigned workers = 0;
  auto* oracle = app.add_subcommand("oracle", "Compare against exact offline optima (n <= 7)");
  add_common(oracle, common);
  add_instance(oracle, io, false);
  oracle->add_option("--instances", instances, "Number of generated instances (seeds seed..seed+K-1)");
  oracle->add_option("--workers", workers, "Worker threads (0 = all cores)");

  int lb_r = 2, lb_c = 1, lb_phases = 20;
  bool export_instance = false;
  auto* lowerbound = app.add_subcommand("lowerbound", "Run the adaptive lower-bound construction");
  add_common(lowerbound, common);
  lowerbound->add_option("--r", lb_r, "Request size (>= 2)");
  lowerbound->add_option("--c", lb_c, "Budget divisor of the attacked algorithm");
  lowerbound->add_option("--phases", lb_phases, "Number of phases");
  lowerbound->add_flag("--export-instance", export_instance, "Also write the emitted requests as an instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) return cmd_gen(io, common);
    if (*simulate) return cmd_simulate(io, common);
    if (*audit) return cmd_audit(io, common, no_fetch_audits);
    if (*oracle) return cmd_oracle(io, common, instances, workers);
    if (*lowerbound) return cmd_lowerbound(lb_r, lb_c, lb_phases, common, export_instance);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
