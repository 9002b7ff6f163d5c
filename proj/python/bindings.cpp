#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mssc/harness.hpp"
#include "mssc/instance_io.hpp"

namespace py = pybind11;
using namespace mssc;

namespace {

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(q.num(), q.den());
}

py::list fractions(const std::vector<Rational>& v) {
  py::list out;
  for (const Rational& q : v) out.append(fraction(q));
  return out;
}

std::vector<Element> order_of(const Permutation& p) { return {p.order().begin(), p.order().end()}; }

py::list perms_of(const std::vector<Permutation>& perms) {
  py::list out;
  for (const Permutation& p : perms) out.append(order_of(p));
  return out;
}

ExperimentConfig config_for(const Instance& inst, const std::string& baseline) {
  ExperimentConfig cfg;
  cfg.instance = inst;
  cfg.baseline = parse_baseline(baseline);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_mssc, m) {
  m.doc() = "Online min-sum set cover core";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = std::string(error_name(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<Permutation>(m, "Permutation")
      .def_static("identity", &Permutation::identity, py::arg("n"))
      .def_static("from_order", &Permutation::from_order, py::arg("order"))
      .def("position", &Permutation::position, py::arg("element"))
      .def("at", &Permutation::at, py::arg("position"))
      .def("move_to_front", &Permutation::move_to_front, py::arg("element"))
      .def_property_readonly("order", &order_of)
      .def("__len__", &Permutation::size)
      .def("__eq__", [](const Permutation& a, const Permutation& b) { return a == b; })
      .def("__repr__", [](const Permutation& p) {
        std::string s = "Permutation([";
        for (int i = 0; i < p.size(); ++i) s += (i ? ", " : "") + std::to_string(p.order()[i]);
        return s + "])";
      });

  py::class_<Request>(m, "Request")
      .def(py::init<std::vector<Element>>(), py::arg("elements"))
      .def_property_readonly("elements", [](const Request& r) {
        return std::vector<Element>(r.elements().begin(), r.elements().end());
      })
      .def("__contains__", &Request::contains)
      .def("__len__", &Request::size);

  py::class_<Instance>(m, "Instance")
      .def(py::init([](const Permutation& initial, const std::vector<std::vector<Element>>& requests, int r) {
             Instance inst;
             inst.initial = initial;
             inst.r = r;
             for (const auto& req : requests) inst.requests.emplace_back(req);
             inst.validate();
             return inst;
           }),
           py::arg("initial"), py::arg("requests"), py::arg("r"))
      .def_readonly("initial", &Instance::initial)
      .def_readonly("r", &Instance::r)
      .def_property_readonly("requests",
                             [](const Instance& inst) {
                               std::vector<std::vector<Element>> out;
                               for (const Request& req : inst.requests) {
                                 out.emplace_back(req.elements().begin(), req.elements().end());
                               }
                               return out;
                             })
      .def_property_readonly("n", &Instance::n)
      .def_property_readonly("m", &Instance::m)
      .def("to_json", &instance_to_json)
      .def_static("from_json", &parse_instance, py::arg("text"))
      .def_static("load", [](const std::string& path) { return load_instance(path); }, py::arg("path"))
      .def("save", [](const Instance& inst, const std::string& path) { save_instance(inst, path); }, py::arg("path"));

  m.def("access_cost", &access_cost, py::arg("perm"), py::arg("request"));
  m.def("inversion_distance", &inversion_distance, py::arg("a"), py::arg("b"));
  m.def("move_to_front", &move_to_front, py::arg("perm"), py::arg("element"),
        "Returns (new permutation, swap count).");
  m.def(
      "position_decompose",
      [](std::int64_t pos) {
        const PositionSplit s = position_decompose(pos);
        return py::make_tuple(s.p, s.q);
      },
      py::arg("position"), "Returns (p, q) with position = 2**p + q and 0 <= q < 2**p.");

  py::class_<StepReport>(m, "StepReport")
      .def_readonly("access", &StepReport::access)
      .def_readonly("reorder", &StepReport::reorder)
      .def_readonly("ell", &StepReport::ell)
      .def_readonly("cascade_iterations", &StepReport::cascade_iterations)
      .def_property_readonly("fetched",
                             [](const StepReport& s) {
                               std::vector<std::pair<Element, Position>> out;
                               for (const FetchRecord& f : s.fetched) out.emplace_back(f.element, f.from);
                               return out;
                             })
      .def_property_readonly("total", &StepReport::total);

  py::class_<AlgState>(m, "AlgState")
      .def(py::init([](const Permutation& initial, std::optional<int> c) {
             return AlgState(initial, c ? DivisorMode::fixed(*c) : DivisorMode::per_request());
           }),
           py::arg("initial"), py::arg("c") = py::none())
      .def_property_readonly("permutation", &AlgState::permutation)
      .def_property_readonly("budgets", [](const AlgState& s) { return fractions(s.budgets()); })
      .def("serve", [](AlgState& s, const Request& req) { return serve(s, req); }, py::arg("request"));

  py::class_<PotentialParams>(m, "PotentialParams")
      .def_static("for_r", &PotentialParams::for_r, py::arg("r"))
      .def_readonly("r", &PotentialParams::r)
      .def_readonly("kappa", &PotentialParams::kappa)
      .def_property_readonly("alpha", [](const PotentialParams& p) { return fraction(p.alpha); })
      .def_property_readonly("beta", [](const PotentialParams& p) { return fraction(p.beta); })
      .def_property_readonly("gamma", [](const PotentialParams& p) { return fraction(p.gamma); })
      .def_property_readonly("stage1_coefficient",
                             [](const PotentialParams& p) { return fraction(p.stage1_coefficient()); })
      .def_property_readonly("stage2_coefficient",
                             [](const PotentialParams& p) { return fraction(p.stage2_coefficient()); });

  m.def(
      "total_potential",
      [](const AlgState& state, const Permutation& off, int r) {
        const Potentials pot = total_potential(PairState::of(state, off), PotentialParams::for_r(r));
        return py::make_tuple(fraction(pot.phi), fraction(pot.psi));
      },
      py::arg("state"), py::arg("off"), py::arg("r"), "Returns (Phi, Psi) of the online state against `off`.");

  m.def(
      "opt",
      [](const Instance& inst) {
        const OptResult res = opt_dynamic_bruteforce(inst);
        return py::make_tuple(res.cost, perms_of(res.perms));
      },
      py::arg("instance"), "Exact dynamic optimum: (cost, list after each step).");
  m.def(
      "best_fixed",
      [](const Instance& inst) {
        const FixedResult res = best_fixed_permutation(inst);
        return py::make_tuple(res.perm, res.cost);
      },
      py::arg("instance"), "Fixed list with least access cost: (permutation, cost).");
  m.def("fixed_access_cost", &fixed_access_cost, py::arg("instance"), py::arg("perm"));
  m.def(
      "off_star",
      [](const Instance& inst) { return derive_mtfb_from_opt(inst, opt_dynamic_bruteforce(inst)).total(); },
      py::arg("instance"), "Cost of the MTF-based play derived from the optimum.");

  m.def(
      "random_instance",
      [](int n, int r, int m_, const std::string& dist, std::uint64_t seed) {
        return random_instance(n, r, m_, RequestDistribution::parse(dist), seed);
      },
      py::arg("n"), py::arg("r"), py::arg("m"), py::arg("dist") = "uniform", py::arg("seed") = 0);

  m.def(
      "simulate",
      [](const Instance& inst, std::optional<int> c) {
        AlgState state(inst.initial, c ? DivisorMode::fixed(*c) : DivisorMode::per_request());
        Cost total = 0;
        for (const Request& req : inst.requests) total += serve(state, req).total();
        return total;
      },
      py::arg("instance"), py::arg("c") = py::none(), "Total online cost of DLM (or DLM_c) on the instance.");

  m.def(
      "audit",
      [](const Instance& inst, const std::string& baseline) {
        const AuditReport rep = run_audit(config_for(inst, baseline));
        py::dict out;
        out["passed"] = rep.all_passed();
        out["checks"] = rep.summary.checks;
        out["failures"] = rep.summary.failures;
        out["max_slack_ratio"] = rep.summary.max_slack_ratio;
        out["alg_cost"] = rep.alg_cost;
        out["off_cost"] = rep.off_cost;
        out["invariant_violations"] = rep.invariant_violations;
        return out;
      },
      py::arg("instance"), py::arg("baseline") = "mtfb_from_opt");

  m.def(
      "oracle",
      [](const Instance& inst) {
        const OracleReport rep = run_oracle(config_for(inst, "none"));
        py::dict out;
        out["dlm"] = rep.dlm_cost;
        out["opt"] = rep.opt_cost;
        out["off_star"] = rep.off_star_cost;
        out["mtf_singleton"] = rep.mtf_singleton_cost;
        out["best_fixed"] = rep.best_fixed_cost;
        out["static_bound"] = fraction(rep.static_bound);
        out["off_star_within_4opt"] = rep.off_star_within_4opt;
        out["dlm_within_static_bound"] = rep.dlm_within_static_bound;
        return out;
      },
      py::arg("instance"));

  m.def(
      "lowerbound",
      [](int r, int c, int phases) {
        const LowerBoundReport rep = run_lowerbound(PhaseConfig{r, c, phases});
        py::dict out;
        out["n"] = rep.config.n();
        out["alg_cost"] = rep.alg_cost;
        out["off_cost"] = rep.off_cost;
        out["setup_cost"] = rep.setup_cost;
        out["ratio"] = rep.ratio;
        out["ratio_with_setup"] = rep.ratio_with_setup;
        out["threshold"] = fraction(rep.threshold);
        out["pass"] = rep.pass;
        std::vector<Cost> alg, off;
        for (const LowerBoundPhaseRow& row : rep.phases) {
          alg.push_back(row.alg_cost);
          off.push_back(row.off_cost);
        }
        out["phase_alg"] = alg;
        out["phase_off"] = off;
        return out;
      },
      py::arg("r"), py::arg("c"), py::arg("phases"));

  m.attr("__all__") = std::vector<std::string>{
      "Error", "Permutation", "Request", "Instance", "StepReport", "AlgState", "PotentialParams",
      "access_cost", "inversion_distance", "move_to_front", "position_decompose", "total_potential", "opt",
      "best_fixed", "fixed_access_cost", "off_star", "random_instance", "simulate", "audit", "oracle", "lowerbound"};
}
