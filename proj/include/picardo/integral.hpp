#ifndef PICARDO_INTEGRAL_HPP
#define PICARDO_INTEGRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "picardo/detail/parallel.hpp"
#include "picardo/errors.hpp"
#include "picardo/geraghty.hpp"
#include "picardo/hat_sequence.hpp"
#include "picardo/metric.hpp"
#include "picardo/picard.hpp"
#include "picardo/quadrature.hpp"

namespace picardo {

using Kernel = std::function<double(std::span<const double> t, std::span<const double> s)>;
using Forcing = std::function<double(std::span<const double> t)>;
using Integrand =
    std::function<double(std::span<const double> t, std::span<const double> s, double u)>;

/// Largest truncation handled by tensor-product rules; beyond it only Monte
/// Carlo rules are accepted.
inline constexpr std::size_t kMaxTensorDimension = 4;

/// u(t) = f(t) + int_{[0,1]^n} K(t,s) u(s) ds, truncated to n = n_trunc axes.
struct FredholmProblem {
  std::size_t n_trunc = 1;
  Kernel kernel;
  Forcing forcing;
  double delta = 0.5; ///< claimed bound on |K|, in (0,1)
  double gamma = 2.0; ///< Geraghty constant; beta = 1/gamma

  Interval domain() const noexcept { return {0.0, 1.0}; }

  void validate() const {
    if (n_trunc == 0) throw InvalidArgument("n_trunc must be positive");
    if (!kernel || !forcing) throw InvalidArgument("Fredholm problem needs a kernel and a forcing");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0,1)");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be positive");
  }
};

/// u(t) = f(t) + int_{[a,b]^n} P(t, s, u(s)) ds, truncated to n = n_trunc axes.
struct UrysohnProblem {
  std::size_t n_trunc = 1;
  Interval domain{0.0, 1.0};
  Integrand integrand;
  Forcing forcing;
  double tau = 10.0;   ///< P is assumed (1/tau)-Lipschitz in u
  double alpha = 1.0;  ///< metric weight e^{-arcsin(alpha)}
  Interval u_range{-10.0, 10.0}; ///< values of u sampled by the Lipschitz check
  std::size_t lipschitz_samples = 10000;
  std::uint64_t seed = 0;

  void validate() const {
    if (n_trunc == 0) throw InvalidArgument("n_trunc must be positive");
    if (!integrand || !forcing)
      throw InvalidArgument("Urysohn problem needs an integrand and a forcing");
    if (!(domain.upper > domain.lower)) throw InvalidArgument("domain must have positive width");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("tau must be positive");
    arcsin_weight(alpha);
    if (!(u_range.upper > u_range.lower)) throw InvalidArgument("u_range must have positive width");
  }
};

/// Result of one sampled hypothesis check.
struct HypothesisCheck {
  bool ok = true;
  double worst = 0.0;     ///< worst observed value of the checked quantity
  double bound = 0.0;     ///< the value it is compared against
  std::size_t samples = 0;
  std::string location;   ///< where the worst value occurred
};

struct HypothesisChecks {
  std::optional<HypothesisCheck> kernel_bound_ok; ///< max |K| < delta
  std::optional<HypothesisCheck> lipschitz_ok;    ///< |dP| <= |du| / tau
  std::optional<HypothesisCheck> beta_ok;         ///< beta = 1/gamma or 1/tau is a valid constant
  /// The contraction inequality re-checked on consecutive iterates of the run.
  std::optional<HypothesisCheck> trace_condition;

  /// First failed pre-solve condition, if any (the trace condition is
  /// diagnostic only).
  std::optional<std::pair<std::string, double>> first_violation() const {
    if (kernel_bound_ok && !kernel_bound_ok->ok) return {{"kernel_bound_ok", kernel_bound_ok->worst}};
    if (lipschitz_ok && !lipschitz_ok->ok) return {{"lipschitz_ok", lipschitz_ok->worst}};
    if (beta_ok && !beta_ok->ok) return {{"beta_ok", beta_ok->worst}};
    return std::nullopt;
  }
};

struct SolverReport {
  GridFunction solution;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  HypothesisChecks hypothesis_checks;
  std::optional<double> oracle_gap;
  std::vector<double> step_distances;
  std::optional<IterationTrace<GridFunction>> trace;
};

struct SolveOptions {
  bool force = false;   ///< run even if a hypothesis check fails
  bool oracle = false;  ///< compare against the dense solve
  std::size_t oracle_cap = 10000;
};

namespace detail {

inline std::string node_string(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += describe(x[i]);
  }
  return s + ")";
}

/// "(t1,...,tn,s1,...,sn)"
inline std::string pair_string(std::span<const double> t, std::span<const double> s) {
  std::string a = node_string(t), b = node_string(s);
  return a.substr(0, a.size() - 1) + "," + b.substr(1);
}

inline Discretization discretize_problem(const QuadratureRule& q, std::size_t n, Interval dom) {
  if (q.deterministic() && n > kMaxTensorDimension)
    throw InvalidArgument("n_trunc = " + std::to_string(n) +
                          " needs a Monte Carlo rule (tensor rules stop at " +
                          std::to_string(kMaxTensorDimension) + ")");
  return discretize(q, n, dom);
}

inline std::vector<double> sample_forcing(const Forcing& f, const Grid& g) {
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i] = f(g.node(i));
    if (!std::isfinite(out[i]))
      throw NonFinite("forcing is not finite at t=" + node_string(g.node(i)));
  }
  return out;
}

inline void require_sampled_on(const GridFunction& u, const Discretization& disc) {
  if (!same_grid(u.grid, disc.grid))
    throw MismatchedDomain("function is not sampled on the quadrature grid");
  detail::require_finite(u.values);
}

/// Points used by the sampled bound checks: every node plus the corners.
inline std::vector<std::vector<double>> check_points(const Grid& g) {
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto n = g.node(i);
    pts.emplace_back(n.begin(), n.end());
  }
  const std::size_t dim = g.dim();
  for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
    std::vector<double> c(dim);
    for (std::size_t a = 0; a < dim; ++a) c[a] = (mask >> a) & 1 ? g.box().upper : g.box().lower;
    pts.push_back(std::move(c));
  }
  return pts;
}

inline constexpr std::size_t kMaxCheckPairs = 4'000'000;

} // namespace detail

/// T u = f + sum_j w_j K(t_i, s_j) u(s_j) on the quadrature nodes, with the
/// kernel matrix evaluated once.
class FredholmOperator {
public:
  FredholmOperator(const FredholmProblem& p, const QuadratureRule& q)
      : disc_(detail::discretize_problem(q, p.n_trunc, p.domain())) {
    p.validate();
    const Grid& g = *disc_.grid;
    const std::size_t n = g.size();
    forcing_ = detail::sample_forcing(p.forcing, g);
    kernel_.resize(n * n);
    detail::parallel_for(n, n, [&](std::size_t i) {
      for (std::size_t j = 0; j < n; ++j) {
        double k = p.kernel(g.node(i), g.node(j));
        if (!std::isfinite(k))
          throw NonFinite("kernel is not finite at t=" + detail::node_string(g.node(i)) +
                          " s=" + detail::node_string(g.node(j)));
        kernel_[i * n + j] = k;
      }
    });
  }

  const Discretization& discretization() const noexcept { return disc_; }
  const GridPtr& grid() const noexcept { return disc_.grid; }
  GridFunction forcing() const { return GridFunction(disc_.grid, forcing_); }
  double kernel_at(std::size_t i, std::size_t j) const { return kernel_[i * disc_.size() + j]; }

  GridFunction operator()(const GridFunction& u) const {
    detail::require_sampled_on(u, disc_);
    const std::size_t n = disc_.size();
    std::vector<double> out(n);
    detail::parallel_for(n, n, [&](std::size_t i) {
      std::vector<double> terms(n);
      for (std::size_t j = 0; j < n; ++j) terms[j] = disc_.weights[j] * (kernel_[i * n + j] * u.values[j]);
      out[i] = forcing_[i] + detail::pairwise_sum(terms);
      if (!std::isfinite(out[i]))
        throw NonFinite("Tu is not finite at t=" + detail::node_string(disc_.grid->node(i)));
    });
    return GridFunction(disc_.grid, std::move(out));
  }

  /// As an operator on tuples of functions: reads the first entry.
  GridFunction operator()(const HatSequence<GridFunction>& s) const { return (*this)(s.at(1)); }

private:
  Discretization disc_;
  std::vector<double> forcing_;
  std::vector<double> kernel_;
};

/// T u = f + sum_j w_j P(t_i, s_j, u(s_j)) on the quadrature nodes.
class UrysohnOperator {
public:
  UrysohnOperator(const UrysohnProblem& p, const QuadratureRule& q)
      : disc_(detail::discretize_problem(q, p.n_trunc, p.domain)), integrand_(p.integrand) {
    p.validate();
    forcing_ = detail::sample_forcing(p.forcing, *disc_.grid);
  }

  const Discretization& discretization() const noexcept { return disc_; }
  const GridPtr& grid() const noexcept { return disc_.grid; }
  GridFunction forcing() const { return GridFunction(disc_.grid, forcing_); }

  GridFunction operator()(const GridFunction& u) const {
    detail::require_sampled_on(u, disc_);
    const Grid& g = *disc_.grid;
    const std::size_t n = disc_.size();
    std::vector<double> out(n);
    detail::parallel_for(n, n, [&](std::size_t i) {
      std::vector<double> terms(n);
      for (std::size_t j = 0; j < n; ++j)
        terms[j] = disc_.weights[j] * integrand_(g.node(i), g.node(j), u.values[j]);
      out[i] = forcing_[i] + detail::pairwise_sum(terms);
      if (!std::isfinite(out[i]))
        throw NonFinite("Tu is not finite at t=" + detail::node_string(g.node(i)));
    });
    return GridFunction(disc_.grid, std::move(out));
  }

  GridFunction operator()(const HatSequence<GridFunction>& s) const { return (*this)(s.at(1)); }

private:
  Discretization disc_;
  Integrand integrand_;
  std::vector<double> forcing_;
};

inline GridFunction apply_fredholm(const GridFunction& u, const FredholmProblem& p,
                                   const QuadratureRule& q) {
  return FredholmOperator(p, q)(u);
}

inline GridFunction apply_urysohn(const GridFunction& u, const UrysohnProblem& p,
                                  const QuadratureRule& q) {
  return UrysohnOperator(p, q)(u);
}

// Hypothesis checks -----------------------------------------------------------

/// max |K(t,s)| over node/corner pairs, compared against delta.
inline HypothesisCheck check_kernel_bound(const FredholmProblem& p, const Grid& g,
                                          std::uint64_t seed = 0) {
  const auto pts = detail::check_points(g);
  HypothesisCheck c;
  c.bound = p.delta;
  auto visit = [&](const std::vector<double>& t, const std::vector<double>& s) {
    double k = std::abs(p.kernel(t, s));
    if (!std::isfinite(k)) k = std::numeric_limits<double>::infinity();
    if (++c.samples == 1 || k > c.worst) {
      c.worst = k;
      c.location = detail::pair_string(t, s);
    }
  };
  const std::size_t m = pts.size();
  if (m * m <= detail::kMaxCheckPairs) {
    for (const auto& t : pts)
      for (const auto& s : pts) visit(t, s);
  } else {
    const std::size_t corners = std::size_t{1} << g.dim();
    for (std::size_t a = m - corners; a < m; ++a)
      for (std::size_t b = m - corners; b < m; ++b) visit(pts[a], pts[b]);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (std::size_t i = 0; i < detail::kMaxCheckPairs; ++i) visit(pts[pick(rng)], pts[pick(rng)]);
  }
  c.ok = c.worst < p.delta;
  return c;
}

/// beta = 1/constant must be a valid Geraghty constant (constant > 1).
inline HypothesisCheck check_beta_constant(double constant) {
  HypothesisCheck c;
  const auto beta = GeraghtyFn::constant(1.0 / constant);
  const auto r = beta_sanity(beta);
  c.ok = r.passed;
  c.worst = 1.0 / constant;
  c.bound = 1.0;
  c.samples = r.samples;
  c.location = "beta=" + beta.name();
  return c;
}

/// Samples |P(t,s,u1) - P(t,s,u2)| <= |u1 - u2| / tau.
inline HypothesisCheck check_lipschitz(const UrysohnProblem& p) {
  HypothesisCheck c;
  c.bound = 1.0 / p.tau;
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> pos(p.domain.lower, p.domain.upper);
  std::uniform_real_distribution<double> val(p.u_range.lower, p.u_range.upper);
  const std::size_t n = p.n_trunc;
  std::vector<double> t(n), s(n);
  auto visit = [&](double u1, double u2) {
    if (u1 == u2) return;
    const double dp = std::abs(p.integrand(t, s, u1) - p.integrand(t, s, u2));
    const double du = std::abs(u1 - u2);
    ++c.samples;
    const double ratio = dp / du;
    if (!(ratio <= c.worst)) {
      c.worst = std::isfinite(ratio) ? ratio : std::numeric_limits<double>::infinity();
      c.location = detail::pair_string(t, s) + " u1=" + describe(u1) + " u2=" + describe(u2);
    }
    if (!(dp <= du / p.tau + kViolationTolerance)) c.ok = false;
  };
  // Corners of the (t, s) box against the ends of the u range.
  const std::size_t corner_axes = std::min<std::size_t>(n, 4);
  for (std::size_t mask = 0; mask < (std::size_t{1} << (2 * corner_axes)); ++mask) {
    for (std::size_t a = 0; a < n; ++a) {
      const bool t_hi = a < corner_axes && ((mask >> a) & 1);
      const bool s_hi = a < corner_axes && ((mask >> (corner_axes + a)) & 1);
      t[a] = t_hi ? p.domain.upper : p.domain.lower;
      s[a] = s_hi ? p.domain.upper : p.domain.lower;
    }
    visit(p.u_range.lower, p.u_range.upper);
  }
  for (std::size_t i = 0; i < p.lipschitz_samples; ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      t[a] = pos(rng);
      s[a] = pos(rng);
    }
    const double u1 = val(rng), u2 = val(rng);
    visit(u1, u2);
  }
  return c;
}

/// Kannan-type inequality on consecutive steps:
/// step[j] <= beta/2 (step[j-1] + step[j]).
inline HypothesisCheck check_kannan_trace(std::span<const double> steps, double beta) {
  HypothesisCheck c;
  c.bound = 1.0;
  for (std::size_t j = 1; j < steps.size(); ++j) {
    const double rhs = beta / 2.0 * (steps[j - 1] + steps[j]);
    ++c.samples;
    if (rhs > 0.0 && steps[j] / rhs > c.worst) {
      c.worst = steps[j] / rhs;
      c.location = "step " + std::to_string(j);
    }
    if (steps[j] > rhs + kViolationTolerance) c.ok = false;
  }
  return c;
}

/// H_k inequality on consecutive steps with constant beta:
/// step[j] <= beta max(step[j-1], step[j]).
inline HypothesisCheck check_hk_trace(std::span<const double> steps, double beta) {
  HypothesisCheck c;
  c.bound = 1.0;
  for (std::size_t j = 1; j < steps.size(); ++j) {
    const double rhs = beta * std::max(steps[j - 1], steps[j]);
    ++c.samples;
    if (rhs > 0.0 && steps[j] / rhs > c.worst) {
      c.worst = steps[j] / rhs;
      c.location = "step " + std::to_string(j);
    }
    if (steps[j] > rhs + kViolationTolerance) c.ok = false;
  }
  return c;
}

inline HypothesisChecks check_fredholm_hypotheses(const FredholmProblem& p, const Grid& g) {
  HypothesisChecks h;
  h.kernel_bound_ok = check_kernel_bound(p, g);
  h.beta_ok = check_beta_constant(p.gamma);
  return h;
}

/// beta = 1/tau must be valid and the volume of the box times 1/tau must stay
/// below one for the iteration to contract.
inline HypothesisChecks check_urysohn_hypotheses(const UrysohnProblem& p) {
  HypothesisChecks h;
  h.lipschitz_ok = check_lipschitz(p);
  auto b = check_beta_constant(p.tau);
  const double volume = std::pow(p.domain.width(), static_cast<double>(p.n_trunc));
  if (volume / p.tau > b.worst) {
    b.worst = volume / p.tau;
    b.location += " volume/tau=" + describe(volume / p.tau);
  }
  b.ok = b.ok && volume / p.tau < 1.0;
  h.beta_ok = b;
  return h;
}

// Oracles -------------------------------------------------------------------------

/// Nystrom solve of (I - W K) u = f by LU with partial pivoting. The kernel is
/// evaluated directly, independent of FredholmOperator.
inline GridFunction oracle_fredholm_dense(const FredholmProblem& p, const QuadratureRule& q,
                                          std::size_t cap = 10000) {
  p.validate();
  if (!q.deterministic()) throw InvalidArgument("the dense oracle needs a deterministic rule");
  const Discretization disc = detail::discretize_problem(q, p.n_trunc, p.domain());
  const Grid& g = *disc.grid;
  const std::size_t n = g.size();
  if (n > cap)
    throw CapExceeded(std::to_string(n) + " collocation nodes exceed the cap of " +
                      std::to_string(cap));
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    b(i) = p.forcing(g.node(i));
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = (i == j ? 1.0 : 0.0) - disc.weights[j] * p.kernel(g.node(i), g.node(j));
  }
  if (!a.allFinite() || !b.allFinite()) throw NonFinite("dense Nystrom system is not finite");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rc = lu.rcond();
  if (!(rc > 1e-13)) throw SingularSystem("dense Nystrom system is singular", rc);
  Eigen::VectorXd u = lu.solve(b);
  if (!u.allFinite()) throw SingularSystem("dense Nystrom solve produced non-finite values", rc);
  return GridFunction(disc.grid, std::vector<double>(u.data(), u.data() + n));
}

/// Damped Newton iteration on the Urysohn collocation system
/// u_i - f_i - sum_j w_j P(t_i, s_j, u_j) = 0, Jacobian by central differences.
inline GridFunction oracle_urysohn_newton(const UrysohnProblem& p, const QuadratureRule& q,
                                          std::size_t cap = 10000) {
  p.validate();
  const Discretization disc = detail::discretize_problem(q, p.n_trunc, p.domain);
  const Grid& g = *disc.grid;
  const std::size_t n = g.size();
  if (n > cap)
    throw CapExceeded(std::to_string(n) + " collocation nodes exceed the cap of " +
                      std::to_string(cap));
  Eigen::VectorXd f(n), u(n);
  for (std::size_t i = 0; i < n; ++i) f(i) = p.forcing(g.node(i));
  u = f;

  auto residual = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(n);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += disc.weights[j] * p.integrand(g.node(i), g.node(j), x(j));
      r(i) = x(i) - f(i) - acc;
    }
    return r;
  };

  Eigen::VectorXd r = residual(u);
  double norm = r.lpNorm<Eigen::Infinity>();
  for (int iter = 0; iter < 100 && norm > 1e-15 * (1.0 + u.lpNorm<Eigen::Infinity>()); ++iter) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(u(j)));
      for (std::size_t i = 0; i < n; ++i) {
        const double dp = (p.integrand(g.node(i), g.node(j), u(j) + h) -
                           p.integrand(g.node(i), g.node(j), u(j) - h)) /
                          (2.0 * h);
        jac(i, j) -= disc.weights[j] * dp;
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    if (!(lu.rcond() > 1e-13)) throw SingularSystem("Newton Jacobian is singular", lu.rcond());
    const Eigen::VectorXd delta = lu.solve(r);
    double lambda = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 30; ++ls, lambda *= 0.5) {
      Eigen::VectorXd trial = u - lambda * delta;
      Eigen::VectorXd rt = residual(trial);
      const double nt = rt.lpNorm<Eigen::Infinity>();
      if (nt < norm) {
        u = std::move(trial);
        r = std::move(rt);
        norm = nt;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (!u.allFinite()) throw NonFinite("Newton oracle produced non-finite values");
  return GridFunction(disc.grid, std::vector<double>(u.data(), u.data() + n));
}

// Solvers -------------------------------------------------------------------------

namespace detail {

inline SolverReport finish_report(FixedPointResult<GridFunction>&& r, HypothesisChecks checks) {
  SolverReport rep;
  rep.solution = std::move(r.point);
  rep.residual = r.residual;
  rep.iterations = r.iterations_used;
  rep.converged = r.converged;
  rep.hypothesis_checks = std::move(checks);
  rep.step_distances = std::move(r.step_distances);
  rep.trace = std::move(r.trace);
  return rep;
}

inline void enforce(const HypothesisChecks& h, const SolveOptions& opt) {
  if (opt.force) return;
  if (auto v = h.first_violation()) throw HypothesisViolated(v->first, v->second);
}

inline double sup_gap(const GridFunction& a, const GridFunction& b) {
  return WeightedSup{1.0}(a, b);
}

} // namespace detail

/// Successive approximation u_{n+1} = T u_n from u_0 = f in the sup metric.
inline SolverReport solve_fredholm(const FredholmProblem& p, const QuadratureRule& q,
                                   IterationConfig cfg = {}, const SolveOptions& opt = {}) {
  const FredholmOperator op(p, q);
  auto checks = check_fredholm_hypotheses(p, *op.grid());
  detail::enforce(checks, opt);

  cfg.trace_beta = GeraghtyFn::constant(1.0 / p.gamma);
  auto run = infinite_k_picard<GridFunction>(op, {op.forcing()}, WeightedSup{1.0}, cfg);
  checks.trace_condition = check_kannan_trace(run.step_distances, 1.0 / p.gamma);
  SolverReport rep = detail::finish_report(std::move(run), std::move(checks));
  if (opt.oracle)
    rep.oracle_gap = detail::sup_gap(rep.solution, oracle_fredholm_dense(p, q, opt.oracle_cap));
  return rep;
}

/// Successive approximation in the weighted max metric e^{-arcsin(alpha)} sup|.|.
inline SolverReport solve_urysohn(const UrysohnProblem& p, const QuadratureRule& q,
                                  IterationConfig cfg = {}, const SolveOptions& opt = {}) {
  const UrysohnOperator op(p, q);
  auto checks = check_urysohn_hypotheses(p);
  detail::enforce(checks, opt);

  const WeightedSup metric{arcsin_weight(p.alpha)};
  cfg.trace_beta = GeraghtyFn::constant(1.0 / p.tau);
  auto run = infinite_k_picard<GridFunction>(op, {op.forcing()}, metric, cfg);
  checks.trace_condition = check_hk_trace(run.step_distances, 1.0 / p.tau);
  SolverReport rep = detail::finish_report(std::move(run), std::move(checks));
  if (opt.oracle)
    rep.oracle_gap = detail::sup_gap(rep.solution, oracle_urysohn_newton(p, q, opt.oracle_cap));
  return rep;
}

} // namespace picardo

#endif // PICARDO_INTEGRAL_HPP
