#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hornforge/pipeline.hpp"
#include "hornforge/reconstruct.hpp"
#include "hornforge/smtlib.hpp"
#include "hornforge/transform.hpp"
#include "hornforge/tstp.hpp"

namespace py = pybind11;
using namespace hornforge;

namespace {

PipelineOptions options_from_kwargs(const std::vector<std::string>& strategies,
                                    size_t max_clauses, double timeout_secs, bool sequential,
                                    bool no_ordering, bool normalize) {
  PipelineOptions o;
  for (const std::string& s : strategies) o.strategies.push_back(Strategy::parse(s));
  if (max_clauses) o.max_clauses = max_clauses;
  if (timeout_secs > 0) o.timeout_secs = timeout_secs;
  o.sequential = sequential;
  o.no_ordering = no_ordering;
  o.normalize = normalize;
  return o;
}

py::dict report_to_dict(const RunReport& r) {
  py::dict d;
  d["outcome"] = outcome_name(r.outcome);
  d["clauses_generated"] = r.clauses_generated;
  d["clauses_kept"] = r.clauses_kept;
  d["derivation_steps"] = r.derivation_steps;
  d["proof_defs"] = r.proof_defs;
  d["strategy_index"] = r.strategy_index;
  d["strategy"] = r.strategy;
  d["detail"] = r.detail;
  py::dict t;
  for (const auto& [k, v] : r.timings) t[py::str(k)] = v;
  d["timings"] = t;
  return d;
}

py::dict artifacts_to_dict(const ProveArtifacts& a) {
  py::dict d;
  d["report"] = report_to_dict(a.report);
  d["derivation"] = a.derivation_tstp;
  d["transformed"] = a.transformed_tstp;
  d["proof"] = a.proof_surface;
  return d;
}

}  // namespace

PYBIND11_MODULE(hornforge, m) {
  m.doc() = "Horn-logic prover and proof round-trip toolkit";

  py::class_<Problem>(m, "Problem")
      .def_property_readonly("goal_name", [](const Problem& p) { return p.goal.name; })
      .def_property_readonly("goal",
                             [](const Problem& p) {
                               return emit_smt_atom(p.goal.atom, p.signature);
                             })
      .def_property_readonly("axiom_names",
                             [](const Problem& p) {
                               std::vector<std::string> names;
                               for (const auto& a : p.axioms) names.push_back(a.name);
                               return names;
                             })
      .def_property_readonly("hypothesis_names",
                             [](const Problem& p) {
                               std::vector<std::string> names;
                               for (const auto& h : p.hypotheses) names.push_back(h.name);
                               return names;
                             })
      .def("__repr__", [](const Problem& p) {
        return "<hornforge.Problem goal=" + p.goal.name + " axioms=" +
               std::to_string(p.axioms.size()) + " hypotheses=" +
               std::to_string(p.hypotheses.size()) + ">";
      });

  m.def("parse_problem", [](const std::string& text) { return parse_problem(text); },
        py::arg("text"), "Parse the SMT-LIB subset into a Problem.");
  m.def("emit_problem", [](const Problem& p) { return emit_problem(p); }, py::arg("problem"),
        "Render a Problem back to its surface syntax.");

  m.def(
      "prove",
      [](const std::string& problem_text, const std::vector<std::string>& strategies,
         size_t max_clauses, double timeout_secs, bool sequential, bool no_ordering,
         bool normalize) {
        Problem p = parse_problem(problem_text);
        ProveArtifacts a = run_prove(p, options_from_kwargs(strategies, max_clauses, timeout_secs,
                                                            sequential, no_ordering, normalize));
        return artifacts_to_dict(a);
      },
      py::arg("problem"), py::arg("strategies") = std::vector<std::string>{},
      py::arg("max_clauses") = 0, py::arg("timeout_secs") = 0.0, py::arg("sequential") = true,
      py::arg("no_ordering") = false, py::arg("normalize") = false,
      "Prove the goal; returns report and artifacts (derivation, transformed, proof).");

  m.def(
      "reconstruct",
      [](const std::string& problem_text, const std::string& tstp_text, bool normalize) {
        Problem p = parse_problem(problem_text);
        Derivation d = parse_tstp(tstp_text, p.signature);
        PipelineOptions opts;
        opts.normalize = normalize;
        return artifacts_to_dict(run_reconstruct(p, d, opts));
      },
      py::arg("problem"), py::arg("derivation"), py::arg("normalize") = false,
      "Replay an external TSTP derivation into a checked proof.");

  m.def(
      "check",
      [](const std::string& problem_text, const std::string& proof_text) {
        Problem p = parse_problem(problem_text);
        Proof proof = parse_surface(proof_text, p.signature);
        return report_to_dict(run_check(p, proof));
      },
      py::arg("problem"), py::arg("proof"),
      "Kernel-check a surface proof against the problem's goal.");

  m.def(
      "validate_step",
      [](const std::string& problem_text, const std::string& premises_tstp,
         const std::string& rule) {
        Problem p = parse_problem(problem_text);
        Derivation d = parse_tstp(premises_tstp, p.signature);
        if (d.steps.empty()) throw std::runtime_error("no steps");
        std::vector<HornClause> premises;
        for (size_t i = 0; i + 1 < d.steps.size(); ++i) premises.push_back(d.steps[i].clause);
        StepValidation v = validate_step(premises, d.steps.back().clause, rule);
        py::dict out;
        out["valid"] = v.valid;
        out["reason"] = v.reason;
        return out;
      },
      py::arg("problem"), py::arg("steps"), py::arg("rule"),
      "Validate that the last cnf record follows from the earlier ones by the rule.");
}
