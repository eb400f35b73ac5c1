#ifndef PICARDO_PICARD_HPP
#define PICARDO_PICARD_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "picardo/contraction.hpp"
#include "picardo/errors.hpp"
#include "picardo/geraghty.hpp"
#include "picardo/hat_sequence.hpp"
#include "picardo/metric.hpp"

namespace picardo {

struct IterationConfig {
  double eps_step = 1e-12;    ///< threshold on d(x_{n+k}, x_{n+k+1})
  double eps_res = 1e-12;     ///< threshold on d(u, T(u, u, ...))
  std::size_t max_iter = 10000;
  bool record_trace = false;
  /// When set, the trace also records beta(M_k) for consecutive windows.
  std::optional<GeraghtyFn> trace_beta;

  void validate() const {
    if (!(eps_step > 0.0) || !(eps_res > 0.0))
      throw InvalidArgument("iteration thresholds must be positive");
    if (max_iter == 0) throw InvalidArgument("max_iter must be at least 1");
  }
};

/// Step distances above this abort the run.
inline constexpr double kDivergenceThreshold = 1e12;

/// Two positive steps at or below this may be equal without counting as a
/// monotonicity violation.
inline constexpr double kMonotoneFloor = 1e-14;

template <class P>
struct IterationTrace {
  std::vector<P> iterates;                 ///< x_1, ..., x_k (base) then x_{k+1}, ...
  std::vector<double> step_distances;      ///< entry j is d(x_{k+j}, x_{k+j+1})
  std::vector<std::optional<double>> residuals; ///< d(x, T(x,...,x)) where evaluated
  /// M_k of the windows ending at x_{k+j-1} and x_{k+j}; by the collapse
  /// identity this is max(step[j-1], step[j]). Empty at j = 0.
  std::vector<std::optional<double>> mk_values;
  std::vector<std::optional<double>> beta_values;
};

template <class P>
struct FixedPointResult {
  P point;
  double residual = 0.0;
  std::size_t iterations_used = 0;
  bool converged = false;
  std::optional<IterationTrace<P>> trace;
  std::vector<double> step_distances; ///< recorded even without a full trace
  std::size_t monotone_violations = 0;
};

namespace detail {

inline bool monotone_violation(double prev, double cur) noexcept {
  if (!(prev > 0.0)) return false;
  if (cur < prev) return false;
  return !(prev <= kMonotoneFloor && cur <= kMonotoneFloor);
}

/// Shared recurrence: `next(window)` produces the following iterate from the
/// last k points; `residual(u)` measures d(u, T(u, u, ...)).
template <class P, class Next, class Residual, class Metric>
FixedPointResult<P> run_picard(std::vector<P> window, const Next& next, const Residual& residual,
                               const Metric& d, const IterationConfig& cfg) {
  cfg.validate();
  if (window.empty()) throw InvalidArgument("k-Picard iteration needs at least one base point");
  for (const P& p : window)
    if (!same_domain(p, window.front()))
      throw MismatchedDomain("base points live on different domains");

  FixedPointResult<P> res{window.back(), 0.0, 0, false, std::nullopt, {}, 0};
  if (cfg.record_trace) {
    res.trace.emplace();
    res.trace->iterates = window;
  }

  std::optional<double> prev_step;
  bool have_residual = false;
  for (std::size_t n = 1; n <= cfg.max_iter; ++n) {
    P x = next(std::span<const P>(window));
    double step;
    try {
      step = d(window.back(), x);
    } catch (const NonFinite& e) {
      throw Diverged("iterate " + std::to_string(n) + " is not finite: " + e.what());
    }
    if (!std::isfinite(step) || step > kDivergenceThreshold)
      throw Diverged("step distance " + describe(step) + " at iteration " + std::to_string(n));

    if (prev_step && monotone_violation(*prev_step, step)) ++res.monotone_violations;
    res.step_distances.push_back(step);

    std::optional<double> r;
    if (step <= cfg.eps_step) r = residual(x);

    if (res.trace) {
      auto& t = *res.trace;
      t.iterates.push_back(x);
      t.step_distances.push_back(step);
      t.residuals.push_back(r);
      if (prev_step) {
        double m = std::max(*prev_step, step);
        t.mk_values.push_back(m);
        t.beta_values.push_back(cfg.trace_beta ? std::optional<double>((*cfg.trace_beta)(m))
                                               : std::nullopt);
      } else {
        t.mk_values.push_back(std::nullopt);
        t.beta_values.push_back(std::nullopt);
      }
    }

    window.erase(window.begin());
    window.push_back(std::move(x));
    prev_step = step;
    res.iterations_used = n;

    if (r && *r <= cfg.eps_res) {
      res.converged = true;
      res.residual = *r;
      have_residual = true;
      break;
    }
  }

  res.point = window.back();
  if (!have_residual) res.residual = residual(res.point);
  return res;
}

} // namespace detail

/// The k-Picard sequence x_{n+k} = T(x_n, ..., x_{n+k-1}) from k base points.
///
/// Stops once a step is at most eps_step and the diagonal residual
/// d(x, T(x, ..., x)) is at most eps_res, or after max_iter new iterates.
template <class P, class Op, class Metric>
  requires FiniteOperator<Op, P> && MetricFor<Metric, P>
FixedPointResult<P> k_picard(const Op& T, std::vector<P> base, const Metric& d,
                             const IterationConfig& cfg = {}) {
  const std::size_t k = base.size();
  auto call = [&T](std::span<const P> xs) -> P {
    try {
      return T(xs);
    } catch (const OperatorFailure&) {
      throw;
    } catch (const std::exception& e) {
      throw OperatorFailure(std::string("operator failed: ") + e.what());
    }
  };
  auto residual = [&](const P& u) {
    std::vector<P> diag(k, u);
    return static_cast<double>(d(u, call(std::span<const P>(diag))));
  };
  return detail::run_picard(std::move(base), call, residual, d, cfg);
}

/// The infinite k-Picard sequence: step n feeds T the tuple
/// (x_n, ..., x_{n+k-2}, x_{n+k-1}, x_{n+k-1}, ...). The residual is
/// measured against the constant tuple (u, u, ...).
template <class P, class Op, class Metric>
  requires HatOperator<Op, P> && MetricFor<Metric, P>
FixedPointResult<P> infinite_k_picard(const Op& T, std::vector<P> base, const Metric& d,
                                      const IterationConfig& cfg = {}) {
  auto next = [&T](std::span<const P> window) { return invoke_operator<P>(T, hat_from(window)); };
  auto residual = [&](const P& u) {
    return static_cast<double>(d(u, invoke_operator<P>(T, HatSequence<P>(u))));
  };
  return detail::run_picard(std::move(base), next, residual, d, cfg);
}

struct Diagnostics {
  std::size_t monotone_violations = 0;
  std::size_t positive_steps = 0;
  /// exp of the least-squares slope of log(step) against step index; empty
  /// when fewer than two positive steps were recorded.
  std::optional<double> rate;
  /// Largest pairwise distance among the last few recorded iterates.
  double cauchy_indicator = 0.0;
};

inline constexpr std::size_t kCauchyWindow = 32;

template <class P, class Metric>
  requires MetricFor<Metric, P>
Diagnostics diagnose(const IterationTrace<P>& trace, const Metric& d) {
  const auto& s = trace.step_distances;
  if (s.size() < 3)
    throw InsufficientTrace("diagnose needs at least 3 step distances, got " +
                            std::to_string(s.size()));
  Diagnostics out;
  for (std::size_t j = 1; j < s.size(); ++j)
    if (detail::monotone_violation(s[j - 1], s[j])) ++out.monotone_violations;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (!(s[j] > 0.0)) continue;
    double x = static_cast<double>(j), y = std::log(s[j]);
    ++out.positive_steps;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (out.positive_steps >= 2) {
    double n = static_cast<double>(out.positive_steps);
    double denom = n * sxx - sx * sx;
    if (denom > 0.0) out.rate = std::exp((n * sxy - sx * sy) / denom);
  }

  const auto& it = trace.iterates;
  const std::size_t first = it.size() > kCauchyWindow ? it.size() - kCauchyWindow : 0;
  for (std::size_t a = first; a < it.size(); ++a)
    for (std::size_t b = a + 1; b < it.size(); ++b)
      out.cauchy_indicator = std::max(out.cauchy_indicator, static_cast<double>(d(it[a], it[b])));
  return out;
}

} // namespace picardo

#endif // PICARDO_PICARD_HPP
