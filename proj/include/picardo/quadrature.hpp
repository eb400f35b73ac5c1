#ifndef PICARDO_QUADRATURE_HPP
#define PICARDO_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "picardo/errors.hpp"
#include "picardo/metric.hpp"

namespace picardo {

/// One-dimensional nodes and weights.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

/// P_m(x) and P_m'(x) by the three-term recurrence.
inline std::pair<double, double> legendre(std::size_t m, double x) {
  double p0 = 1.0, p1 = x;
  for (std::size_t j = 2; j <= m; ++j) {
    const double jd = static_cast<double>(j);
    double pj = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p0) / jd;
    p0 = p1;
    p1 = pj;
  }
  return {p1, static_cast<double>(m) * (x * p1 - p0) / (x * x - 1.0)};
}

} // namespace detail

/// Gauss-Legendre rule with m nodes on [a, b], by Newton iteration on P_m.
/// Nodes are returned in ascending order.
inline Rule1D gauss_legendre(std::size_t m, Interval dom = {0.0, 1.0}) {
  if (m == 0) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  Rule1D r;
  r.nodes.resize(m);
  r.weights.resize(m);
  const double half = 0.5 * dom.width(), mid = dom.midpoint();
  const double md = static_cast<double>(m);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (md + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      auto [p, dp] = detail::legendre(m, x);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    if (m % 2 == 1 && i == m / 2) x = 0.0;
    const double dp = detail::legendre(m, x).second;
    const double w = half * 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = mid - half * x;
    r.nodes[m - 1 - i] = mid + half * x;
    r.weights[i] = w;
    r.weights[m - 1 - i] = w;
  }
  return r;
}

/// Composite trapezoid rule with m >= 2 equispaced nodes including both ends.
inline Rule1D composite_trapezoid(std::size_t m, Interval dom = {0.0, 1.0}) {
  if (m < 2) throw InvalidArgument("trapezoid rule needs at least two nodes");
  Rule1D r;
  const double h = dom.width() / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    r.nodes.push_back(i + 1 == m ? dom.upper : dom.lower + h * static_cast<double>(i));
    r.weights.push_back(i == 0 || i + 1 == m ? 0.5 * h : h);
  }
  return r;
}

/// Quadrature over [lower, upper]^dim. Deterministic kinds are tensor products
/// of a 1-D rule; MonteCarlo draws uniform points with equal weights.
class QuadratureRule {
public:
  enum class Kind { GaussLegendre, CompositeTrapezoid, MonteCarlo };

  static QuadratureRule gauss(std::size_t nodes_per_axis) {
    return QuadratureRule(Kind::GaussLegendre, nodes_per_axis, 0);
  }
  static QuadratureRule trapezoid(std::size_t nodes_per_axis) {
    return QuadratureRule(Kind::CompositeTrapezoid, nodes_per_axis, 0);
  }
  static QuadratureRule monte_carlo(std::size_t points, std::uint64_t seed) {
    return QuadratureRule(Kind::MonteCarlo, points, seed);
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t count() const noexcept { return count_; }
  std::uint64_t seed() const noexcept { return seed_; }
  bool deterministic() const noexcept { return kind_ != Kind::MonteCarlo; }

  std::string name() const {
    switch (kind_) {
    case Kind::GaussLegendre: return "gauss " + std::to_string(count_);
    case Kind::CompositeTrapezoid: return "trapezoid " + std::to_string(count_);
    case Kind::MonteCarlo: return "montecarlo " + std::to_string(count_);
    }
    return "?";
  }

  /// The 1-D rule per axis (deterministic kinds only).
  Rule1D axis_rule(Interval dom) const {
    switch (kind_) {
    case Kind::GaussLegendre: return gauss_legendre(count_, dom);
    case Kind::CompositeTrapezoid: return composite_trapezoid(count_, dom);
    case Kind::MonteCarlo: break;
    }
    throw InvalidArgument("Monte Carlo rules have no per-axis factor");
  }

  friend bool operator==(const QuadratureRule&, const QuadratureRule&) = default;

private:
  QuadratureRule(Kind k, std::size_t count, std::uint64_t seed)
      : kind_(k), count_(count), seed_(seed) {
    if (count == 0) throw InvalidArgument("quadrature rule needs at least one node");
  }

  Kind kind_;
  std::size_t count_;
  std::uint64_t seed_;
};

/// Tensorized nodes (as a shared grid) with matching weights. Node ordering
/// is lexicographic with the last axis varying fastest.
struct Discretization {
  GridPtr grid;
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
};

inline Discretization discretize(const QuadratureRule& q, std::size_t dim, Interval dom) {
  if (dim == 0) throw InvalidArgument("dimension must be positive");
  if (!(dom.upper > dom.lower)) throw InvalidArgument("domain must have positive width");
  std::vector<double> coords, weights;

  if (q.kind() == QuadratureRule::Kind::MonteCarlo) {
    std::mt19937_64 rng(q.seed());
    std::uniform_real_distribution<double> unif(dom.lower, dom.upper);
    const double vol = std::pow(dom.width(), static_cast<double>(dim));
    coords.reserve(q.count() * dim);
    for (std::size_t i = 0; i < q.count() * dim; ++i) coords.push_back(unif(rng));
    weights.assign(q.count(), vol / static_cast<double>(q.count()));
  } else {
    const Rule1D r = q.axis_rule(dom);
    const std::size_t m = r.nodes.size();
    std::size_t total = 1;
    for (std::size_t a = 0; a < dim; ++a) {
      if (total > (std::size_t{1} << 40) / m) throw CapExceeded("tensor grid is too large");
      total *= m;
    }
    coords.reserve(total * dim);
    weights.reserve(total);
    std::vector<std::size_t> idx(dim, 0);
    for (std::size_t n = 0; n < total; ++n) {
      double w = 1.0;
      for (std::size_t a = 0; a < dim; ++a) {
        coords.push_back(r.nodes[idx[a]]);
        w *= r.weights[idx[a]];
      }
      weights.push_back(w);
      for (std::size_t a = dim; a-- > 0;) {
        if (++idx[a] < m) break;
        idx[a] = 0;
      }
    }
  }
  return {std::make_shared<const Grid>(dim, dom, std::move(coords)), std::move(weights)};
}

} // namespace picardo

#endif // PICARDO_QUADRATURE_HPP
