#ifndef PICARDO_METRIC_HPP
#define PICARDO_METRIC_HPP

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "picardo/errors.hpp"

namespace picardo {

/// Closed interval [lower, upper].
struct Interval {
  double lower = 0.0;
  double upper = 1.0;

  double width() const noexcept { return upper - lower; }
  double midpoint() const noexcept { return 0.5 * (lower + upper); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Collocation nodes over the box [lower, upper]^dim, stored row-major
/// (node i occupies coordinates [i*dim, (i+1)*dim)).
class Grid {
public:
  Grid(std::size_t dim, Interval box, std::vector<double> coords)
      : dim_(dim), box_(box), coords_(std::move(coords)) {
    if (dim_ == 0) throw InvalidArgument("grid dimension must be positive");
    if (coords_.size() % dim_ != 0)
      throw InvalidArgument("grid coordinate count is not a multiple of the dimension");
    for (double c : coords_)
      if (!std::isfinite(c)) throw NonFinite("grid node coordinate is not finite");
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }
  const Interval& box() const noexcept { return box_; }

  std::span<const double> node(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }

  const std::vector<double>& coords() const noexcept { return coords_; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.box_ == b.box_ && a.coords_ == b.coords_;
  }

private:
  std::size_t dim_;
  Interval box_;
  std::vector<double> coords_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline bool same_grid(const GridPtr& a, const GridPtr& b) {
  if (a == b) return true;
  return a && b && *a == *b;
}

/// Real samples of a function on a shared grid.
struct GridFunction {
  GridPtr grid;
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (!grid) throw InvalidArgument("grid function without a grid");
    if (values.size() != grid->size())
      throw MismatchedDomain("grid function has " + std::to_string(values.size()) +
                             " samples but the grid has " + std::to_string(grid->size()) +
                             " nodes");
  }

  /// Samples `fn` at every node of `g`.
  template <class Fn>
    requires std::invocable<Fn&, std::span<const double>>
  static GridFunction sample(GridPtr g, Fn&& fn) {
    std::vector<double> v(g->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(g->node(i));
    return GridFunction(std::move(g), std::move(v));
  }

  static GridFunction constant(GridPtr g, double c) {
    std::vector<double> v(g->size(), c);
    return GridFunction(std::move(g), std::move(v));
  }
};

using Vector = std::vector<double>;

/// An element of X: a real, a fixed-length real array, or a function sampled
/// on a grid.
using Point = std::variant<double, Vector, GridFunction>;

// Exact equality ------------------------------------------------------------
//
// Canonical hat sequences trim prefix entries equal to their tail. Equality
// there is bitwise, so -0.0 and 0.0 are distinct and a NaN equals itself.

inline bool same_value(double a, double b) noexcept {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

inline bool same_value(const Vector& a, const Vector& b) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_value(a[i], b[i])) return false;
  return true;
}

inline bool same_value(const GridFunction& a, const GridFunction& b) {
  return same_grid(a.grid, b.grid) && same_value(a.values, b.values);
}

inline bool same_value(const Point& a, const Point& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&b](const auto& x) {
        return same_value(x, std::get<std::decay_t<decltype(x)>>(b));
      },
      a);
}

// Domain compatibility --------------------------------------------------------

inline bool same_domain(double, double) noexcept { return true; }
inline bool same_domain(const Vector& a, const Vector& b) noexcept {
  return a.size() == b.size();
}
inline bool same_domain(const GridFunction& a, const GridFunction& b) {
  return same_grid(a.grid, b.grid);
}
inline bool same_domain(const Point& a, const Point& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&b](const auto& x) {
        return same_domain(x, std::get<std::decay_t<decltype(x)>>(b));
      },
      a);
}

// Human-readable descriptions, used in diagnostics ------------------------------

/// Shortest decimal text that parses back to the same double.
inline std::string describe(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string describe(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += describe(v[i]);
  }
  return s + "]";
}

inline std::string describe(const GridFunction& f) {
  std::string s = "grid-function(" + std::to_string(f.values.size()) + " samples";
  if (!f.values.empty()) {
    auto [lo, hi] = std::minmax_element(f.values.begin(), f.values.end());
    s += ", range " + describe(*lo) + ".." + describe(*hi);
  }
  return s + ")";
}

inline std::string describe(const Point& p) {
  return std::visit([](const auto& x) { return describe(x); }, p);
}

// Metrics -----------------------------------------------------------------------

/// A distance function on points of type P.
template <class M, class P>
concept MetricFor = requires(const M& m, const P& a, const P& b) {
  { m(a, b) } -> std::convertible_to<double>;
};

namespace detail {

inline void require_finite(std::span<const double> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!std::isfinite(xs[i]))
      throw NonFinite("sample " + std::to_string(i) + " is not finite");
}

inline double sup_abs_diff(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw MismatchedDomain("lengths differ: " + std::to_string(x.size()) + " vs " +
                           std::to_string(y.size()));
  require_finite(x);
  require_finite(y);
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

} // namespace detail

/// |x - y| on the reals.
struct AbsDiff {
  double operator()(double x, double y) const {
    if (!std::isfinite(x) || !std::isfinite(y)) throw NonFinite("scalar is not finite");
    return std::abs(x - y);
  }
};

/// Weighted max-norm distance between grid samples: w * max_i |x_i - y_i|.
struct WeightedSup {
  double weight = 1.0;

  double operator()(std::span<const double> x, std::span<const double> y) const {
    return weight * detail::sup_abs_diff(x, y);
  }
  double operator()(const GridFunction& x, const GridFunction& y) const {
    if (!same_grid(x.grid, y.grid)) throw MismatchedDomain("grid functions live on different grids");
    return (*this)(std::span<const double>(x.values), std::span<const double>(y.values));
  }
};

/// The metric weight e^{-arcsin(alpha)} used for the Urysohn setting.
inline double arcsin_weight(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw InvalidArgument("alpha must lie in (0,1], got " + describe(alpha));
  return std::exp(-std::asin(alpha));
}

/// (X, d) for `Point`-valued elements.
class MetricSpace {
public:
  enum class Kind { AbsDiff, SupOnGrid, WeightedSupOnGrid, UserDistance };
  using UserFn = std::function<double(const Point&, const Point&)>;

  static MetricSpace abs_diff(Interval domain = {0.0, 1.0}) {
    return MetricSpace(Kind::AbsDiff, domain, 1.0, {}, {});
  }
  static MetricSpace sup_on_grid(GridPtr grid = nullptr) {
    return MetricSpace(Kind::SupOnGrid, grid ? grid->box() : Interval{}, 1.0, {},
                       std::move(grid));
  }
  /// Weight e^{-arcsin(alpha)}; alpha must lie in (0,1].
  static MetricSpace weighted_sup_on_grid(double alpha, GridPtr grid = nullptr) {
    return MetricSpace(Kind::WeightedSupOnGrid, grid ? grid->box() : Interval{},
                       arcsin_weight(alpha), {}, std::move(grid));
  }
  static MetricSpace user(UserFn fn, Interval domain = {0.0, 1.0}) {
    if (!fn) throw InvalidArgument("user distance is empty");
    return MetricSpace(Kind::UserDistance, domain, 1.0, std::move(fn), {});
  }

  Kind kind() const noexcept { return kind_; }
  double weight() const noexcept { return weight_; }
  const Interval& domain() const noexcept { return domain_; }
  const GridPtr& grid() const noexcept { return grid_; }

  double operator()(const Point& x, const Point& y) const {
    if (kind_ == Kind::UserDistance) {
      double d = user_(x, y);
      if (!std::isfinite(d)) throw NonFinite("user distance returned a non-finite value");
      return d;
    }
    if (x.index() != y.index()) throw MismatchedDomain("points are of different kinds");
    if (const double* a = std::get_if<double>(&x)) {
      double b = std::get<double>(y);
      if (kind_ == Kind::AbsDiff) return AbsDiff{}(*a, b);
      return WeightedSup{weight_}(std::span<const double>(a, 1), std::span<const double>(&b, 1));
    }
    if (kind_ == Kind::AbsDiff) throw MismatchedDomain("AbsDiff metric needs scalar points");
    if (const Vector* a = std::get_if<Vector>(&x))
      return WeightedSup{weight_}(*a, std::get<Vector>(y));
    const auto& gx = std::get<GridFunction>(x);
    const auto& gy = std::get<GridFunction>(y);
    if (grid_ && !same_grid(grid_, gx.grid))
      throw MismatchedDomain("point is not sampled on the space's grid");
    return WeightedSup{weight_}(gx, gy);
  }

private:
  MetricSpace(Kind kind, Interval domain, double weight, UserFn user, GridPtr grid)
      : kind_(kind), domain_(domain), weight_(weight), user_(std::move(user)),
        grid_(std::move(grid)) {}

  Kind kind_;
  Interval domain_;
  double weight_;
  UserFn user_;
  GridPtr grid_;
};

inline double distance(const MetricSpace& space, const Point& x, const Point& y) {
  return space(x, y);
}

} // namespace picardo

#endif // PICARDO_METRIC_HPP
