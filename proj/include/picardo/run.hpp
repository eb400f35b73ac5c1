#ifndef PICARDO_RUN_HPP
#define PICARDO_RUN_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include "picardo/contraction.hpp"
#include "picardo/errors.hpp"
#include "picardo/expression.hpp"
#include "picardo/integral.hpp"
#include "picardo/picard.hpp"
#include "picardo/problem_file.hpp"
#include "picardo/report.hpp"

namespace picardo {

/// Process exit statuses of the command-line front end.
enum ExitStatus : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitHypothesis = 2,
  kExitDiverged = 3,
};

enum class Command { Solve, Check, Iterate };

struct RunOptions {
  Command command = Command::Solve;
  std::filesystem::path file;
  std::filesystem::path out_dir = ".";
  bool trace = false;
  bool oracle = false;
  bool force = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iter;
  std::optional<double> eps_step;
  std::optional<double> eps_res;
};

/// Turns the expression fields of a problem file into solver inputs.
inline FredholmProblem make_fredholm(const FredholmSpec& s) {
  FredholmProblem p;
  p.n_trunc = s.n_trunc;
  p.delta = s.delta;
  p.gamma = s.gamma;
  BoundExpression k(s.kernel, kernel_slots(s.n_trunc, false));
  BoundExpression f(s.forcing, forcing_slots(s.n_trunc));
  const std::size_t n = s.n_trunc;
  p.kernel = [k, n](std::span<const double> t, std::span<const double> x) {
    std::array<double, 2 * kMaxTensorDimension> buf{};
    std::copy(t.begin(), t.end(), buf.begin());
    std::copy(x.begin(), x.end(), buf.begin() + static_cast<std::ptrdiff_t>(n));
    return k(std::span<const double>(buf.data(), 2 * n));
  };
  p.forcing = [f](std::span<const double> t) { return f(t); };
  return p;
}

inline UrysohnProblem make_urysohn(const UrysohnSpec& s, std::uint64_t seed) {
  UrysohnProblem p;
  p.n_trunc = s.n_trunc;
  p.domain = s.domain;
  p.tau = s.tau;
  p.alpha = s.alpha;
  p.u_range = s.u_range;
  p.lipschitz_samples = s.lipschitz_samples;
  p.seed = seed;
  BoundExpression g(s.integrand, kernel_slots(s.n_trunc, true));
  BoundExpression f(s.forcing, forcing_slots(s.n_trunc));
  const std::size_t n = s.n_trunc;
  p.integrand = [g, n](std::span<const double> t, std::span<const double> x, double u) {
    std::array<double, 2 * kMaxTensorDimension + 1> buf{};
    std::copy(t.begin(), t.end(), buf.begin());
    std::copy(x.begin(), x.end(), buf.begin() + static_cast<std::ptrdiff_t>(n));
    buf[2 * n] = u;
    return g(std::span<const double>(buf.data(), 2 * n + 1));
  };
  p.forcing = [f](std::span<const double> t) { return f(t); };
  return p;
}

/// T(x1, ..., xk) from an operator expression.
inline auto make_scalar_operator(const Expression& e, std::size_t k) {
  return [b = BoundExpression(e, operator_slots(k))](std::span<const double> xs) { return b(xs); };
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << text;
  if (!os) throw Error("failed writing " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

inline void write_report(const RunOptions& o, const Json& j) {
  write_file(o.out_dir / "report.json", j.dump(2) + "\n");
}

inline IterationConfig iteration_config(const ProblemFile& pf, const RunOptions& o) {
  IterationConfig cfg;
  cfg.eps_step = o.eps_step.value_or(pf.iteration.eps_step);
  cfg.eps_res = o.eps_res.value_or(pf.iteration.eps_res);
  cfg.max_iter = o.max_iter.value_or(pf.iteration.max_iter);
  cfg.record_trace = o.trace;
  return cfg;
}

inline int finish_solve(const RunOptions& o, const SolverReport& rep, std::ostream& out,
                        std::ostream& err) {
  write_report(o, to_json(rep));
  if (o.trace && rep.trace) write_file(o.out_dir / "trace.csv", trace_csv(*rep.trace));
  out << (rep.converged ? "converged" : "not converged") << " after " << rep.iterations
      << " iterations, residual " << describe(rep.residual);
  if (rep.oracle_gap) out << ", oracle gap " << describe(*rep.oracle_gap);
  out << "\n";
  if (!rep.converged) {
    err << "picardo: no convergence within " << rep.iterations << " iterations\n";
    return kExitDiverged;
  }
  return kExitOk;
}

/// Writes a report for a refused solve: hypothesis checks only.
inline int refuse(const RunOptions& o, HypothesisChecks checks, const HypothesisViolated& e,
                  std::ostream& err) {
  SolverReport rep;
  rep.hypothesis_checks = std::move(checks);
  write_report(o, to_json(rep));
  err << "picardo: " << e.what() << " (use --force to solve anyway)\n";
  return kExitHypothesis;
}

inline int run_solve(const ProblemFile& pf, const RunOptions& o, std::ostream& out,
                     std::ostream& err) {
  const std::uint64_t seed = o.seed.value_or(pf.seed);
  const IterationConfig cfg = iteration_config(pf, o);
  const SolveOptions opt{o.force, o.oracle};
  if (const auto* s = std::get_if<FredholmSpec>(&pf.body)) {
    const FredholmProblem p = make_fredholm(*s);
    const QuadratureRule q = s->quadrature.rule(seed);
    try {
      return finish_solve(o, solve_fredholm(p, q, cfg, opt), out, err);
    } catch (const HypothesisViolated& e) {
      return refuse(o, check_fredholm_hypotheses(p, *FredholmOperator(p, q).grid()), e, err);
    }
  }
  if (const auto* s = std::get_if<UrysohnSpec>(&pf.body)) {
    const UrysohnProblem p = make_urysohn(*s, seed);
    const QuadratureRule q = s->quadrature.rule(seed);
    try {
      return finish_solve(o, solve_urysohn(p, q, cfg, opt), out, err);
    } catch (const HypothesisViolated& e) {
      return refuse(o, check_urysohn_hypotheses(p), e, err);
    }
  }
  err << "picardo: 'solve' needs a [fredholm] or [urysohn] problem, got [" << pf.kind_name()
      << "]\n";
  return kExitUsage;
}

inline int run_check(const ProblemFile& pf, const RunOptions& o, std::ostream& out,
                     std::ostream& err) {
  const auto* s = std::get_if<CheckSpec>(&pf.body);
  if (!s) {
    err << "picardo: 'check' needs a [contraction-check] problem, got [" << pf.kind_name() << "]\n";
    return kExitUsage;
  }
  const ContractionKind kind = s->kind();
  const GeraghtyFn beta = s->beta ? s->beta->make() : GeraghtyFn::constant(0.5);
  if (kind.uses_beta()) {
    const BetaSanityReport sanity = beta_sanity(beta);
    if (!sanity.passed) {
      err << "picardo: beta " << beta.name() << " is not a valid Geraghty function";
      if (sanity.violating_t)
        err << " (beta(" << describe(*sanity.violating_t) << ") = "
            << describe(sanity.violating_value.value_or(0.0)) << ")";
      err << "\n";
      return kExitUsage;
    }
  }
  const auto T = first_entries<double>(s->k, make_scalar_operator(s->op, s->k));
  const FalsifyConfig cfg{s->samples, o.seed.value_or(pf.seed)};
  const auto rep = falsify(kind, T, beta, AbsDiff{}, uniform_interval(s->domain), cfg);
  write_report(o, to_json(rep));
  if (rep.passed()) {
    out << "pass: no counterexample to " << rep.kind << " in " << rep.samples_tried << " samples\n";
    return kExitOk;
  }
  out << "fail: counterexample to " << rep.kind << " at sample " << rep.counterexample->sample_index
      << "\n";
  err << "picardo: counterexample found: lhs " << describe(rep.counterexample->lhs) << " > rhs "
      << describe(rep.counterexample->rhs) << "\n";
  return kExitDiverged;
}

inline int run_iterate(const ProblemFile& pf, const RunOptions& o, std::ostream& out,
                       std::ostream& err) {
  const auto* s = std::get_if<IterationSpec>(&pf.body);
  if (!s) {
    err << "picardo: 'iterate' needs an [operator-iteration] problem, got [" << pf.kind_name()
        << "]\n";
    return kExitUsage;
  }
  const IterationConfig cfg = iteration_config(pf, o);
  const auto T = make_scalar_operator(s->op, s->k);
  FixedPointResult<double> r;
  try {
    r = s->engine == Engine::Finite
            ? k_picard<double>(T, s->base, AbsDiff{}, cfg)
            : infinite_k_picard<double>(first_entries<double>(s->k, T), s->base, AbsDiff{}, cfg);
  } catch (const Diverged& e) {
    err << "picardo: " << e.what() << "\n";
    return kExitDiverged;
  }
  Json j = to_json(r);
  j["engine"] = s->engine == Engine::Finite ? "finite" : "infinite";
  j["k"] = s->k;
  write_report(o, j);
  if (o.trace && r.trace) write_file(o.out_dir / "trace.csv", trace_csv(*r.trace));
  out << (r.converged ? "converged" : "not converged") << " to " << describe(r.point) << " after "
      << r.iterations_used << " iterations\n";
  if (!r.converged) {
    err << "picardo: no convergence within " << r.iterations_used << " iterations\n";
    return kExitDiverged;
  }
  return kExitOk;
}

} // namespace detail

/// Runs one command on a problem file. Artifacts go to `o.out_dir`, a short
/// summary to `out`, diagnostics to `err`.
inline int run(const RunOptions& o, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    const ProblemFile pf = parse_problem(detail::read_file(o.file));
    std::filesystem::create_directories(o.out_dir);
    switch (o.command) {
    case Command::Solve: return detail::run_solve(pf, o, out, err);
    case Command::Check: return detail::run_check(pf, o, out, err);
    case Command::Iterate: return detail::run_iterate(pf, o, out, err);
    }
  } catch (const ParseError& e) {
    err << "picardo: " << o.file.string() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const Diverged& e) {
    err << "picardo: " << e.what() << "\n";
    return kExitDiverged;
  } catch (const std::exception& e) {
    err << "picardo: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace picardo

#endif // PICARDO_RUN_HPP
