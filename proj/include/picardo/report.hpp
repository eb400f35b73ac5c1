#ifndef PICARDO_REPORT_HPP
#define PICARDO_REPORT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "picardo/contraction.hpp"
#include "picardo/hat_sequence.hpp"
#include "picardo/integral.hpp"
#include "picardo/metric.hpp"
#include "picardo/picard.hpp"

namespace picardo {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json optional_number(const std::optional<double>& x) {
  return x ? Json(*x) : Json(nullptr);
}

inline Json check_json(const std::optional<HypothesisCheck>& c) {
  if (!c) return nullptr;
  Json j;
  j["ok"] = c->ok;
  j["worst"] = c->worst;
  j["bound"] = c->bound;
  j["samples"] = c->samples;
  j["location"] = c->location;
  return j;
}

inline Json hat_json(const HatSequence<double>& s) {
  Json j;
  j["prefix"] = s.prefix();
  j["tail"] = s.tail();
  return j;
}

} // namespace detail

inline Json to_json(const HypothesisChecks& h) {
  Json j;
  j["kernel_bound_ok"] = detail::check_json(h.kernel_bound_ok);
  j["lipschitz_ok"] = detail::check_json(h.lipschitz_ok);
  j["beta_ok"] = detail::check_json(h.beta_ok);
  j["trace_condition"] = detail::check_json(h.trace_condition);
  return j;
}

inline Json to_json(const GridFunction& f) {
  Json j;
  j["dim"] = f.grid->dim();
  std::vector<std::vector<double>> nodes;
  nodes.reserve(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    auto x = f.grid->node(i);
    nodes.emplace_back(x.begin(), x.end());
  }
  j["nodes"] = nodes;
  j["values"] = f.values;
  return j;
}

/// Report of a solve. `solution` is null when the solve was refused.
inline Json to_json(const SolverReport& r) {
  Json j;
  j["converged"] = r.converged;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  j["oracle_gap"] = detail::optional_number(r.oracle_gap);
  j["hypothesis_checks"] = to_json(r.hypothesis_checks);
  j["step_distances"] = r.step_distances;
  j["solution"] = r.solution.grid ? to_json(r.solution) : Json(nullptr);
  return j;
}

inline Json to_json(const FalsificationReport<double>& r) {
  Json j;
  j["kind"] = r.kind;
  j["beta"] = r.beta.empty() ? Json(nullptr) : Json(r.beta);
  j["passed"] = r.passed();
  j["samples_tried"] = r.samples_tried;
  j["max_ratio"] = r.max_ratio;
  if (r.counterexample) {
    Json c;
    c["u"] = detail::hat_json(r.counterexample->u);
    c["v"] = detail::hat_json(r.counterexample->v);
    c["lhs"] = r.counterexample->lhs;
    c["rhs"] = r.counterexample->rhs;
    c["sample_index"] = r.counterexample->sample_index;
    j["counterexample"] = c;
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

inline Json to_json(const FixedPointResult<double>& r) {
  Json j;
  j["point"] = r.point;
  j["residual"] = r.residual;
  j["iterations_used"] = r.iterations_used;
  j["converged"] = r.converged;
  j["monotone_violations"] = r.monotone_violations;
  j["step_distances"] = r.step_distances;
  return j;
}

/// trace.csv with one row per recorded step; missing values are left blank.
template <class P>
std::string trace_csv(const IterationTrace<P>& t) {
  std::string out = "n,step_distance,residual_estimate,mk_value,beta_value\n";
  auto cell = [](const std::optional<double>& x) { return x ? describe(*x) : std::string(); };
  for (std::size_t j = 0; j < t.step_distances.size(); ++j) {
    out += std::to_string(j) + "," + describe(t.step_distances[j]) + "," + cell(t.residuals[j]) +
           "," + cell(t.mk_values[j]) + "," + cell(t.beta_values[j]) + "\n";
  }
  return out;
}

} // namespace picardo

#endif // PICARDO_REPORT_HPP
