#ifndef PICARDO_CONTRACTION_HPP
#define PICARDO_CONTRACTION_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "picardo/errors.hpp"
#include "picardo/geraghty.hpp"
#include "picardo/hat_sequence.hpp"
#include "picardo/metric.hpp"

namespace picardo {

/// An operator from eventually-constant tuples to X.
template <class Op, class P>
concept HatOperator = requires(const Op& op, const HatSequence<P>& s) {
  { op(s) } -> std::convertible_to<P>;
};

/// An operator from X^k to X, taking its arguments as a contiguous range.
template <class Op, class P>
concept FiniteOperator = requires(const Op& op, std::span<const P> xs) {
  { op(xs) } -> std::convertible_to<P>;
};

/// Lifts T: X^k -> X to a tuple operator that reads the first k entries.
template <class P, class F>
struct FirstEntries {
  std::size_t k;
  F fn;

  P operator()(const HatSequence<P>& s) const {
    std::vector<P> xs;
    xs.reserve(k);
    for (std::size_t i = 1; i <= k; ++i) xs.push_back(s.at(i));
    return fn(std::span<const P>(xs));
  }
};

template <class P, class F>
FirstEntries<P, F> first_entries(std::size_t k, F fn) {
  return {k, std::move(fn)};
}

/// Applies `op`, converting anything it throws into OperatorFailure.
template <class P, class Op>
P invoke_operator(const Op& op, const HatSequence<P>& s) {
  try {
    return op(s);
  } catch (const OperatorFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw OperatorFailure(std::string("operator failed: ") + e.what(), describe(s));
  }
}

/// The extended M_k function: the largest of
///   sup_{l>=k} d(u_l, v_l),
///   sup_{l>=k} d(u_l, T(u hatted at l)),
///   sup_{l>=k} d(v_l, T(v hatted at l)).
/// Beyond both stabilization indices every term is constant, so the scan
/// over l in [k, max(k, stab(u), stab(v))] is exact.
template <class P, class Op, class Metric>
  requires HatOperator<Op, P> && MetricFor<Metric, P>
double m_k(const Op& T, const HatSequence<P>& u, const HatSequence<P>& v, std::size_t k,
           const Metric& d) {
  if (k == 0) throw InvalidArgument("M_k needs k >= 1");
  const std::size_t last = std::max({k, u.stabilization_index(), v.stabilization_index()});
  double m = 0.0;
  for (std::size_t l = k; l <= last; ++l) {
    m = std::max(m, static_cast<double>(d(u.at(l), v.at(l))));
    m = std::max(m, static_cast<double>(d(u.at(l), invoke_operator<P>(T, rehat(u, l)))));
    m = std::max(m, static_cast<double>(d(v.at(l), invoke_operator<P>(T, rehat(v, l)))));
  }
  return m;
}

/// Which contraction inequality to evaluate.
struct ContractionKind {
  enum class Family {
    Banach,             ///< d(Tx,Ty) <= c d(x,y)
    Geraghty,           ///< d(Tx,Ty) <= beta(d(x,y)) d(x,y)
    Kannan,             ///< d(Tx,Ty) <= c (d(Tx,x) + d(Ty,y))
    Fisher,             ///< d(Tx,Ty) <= c (d(Tx,y) + d(Ty,x))
    Hk,                 ///< d(Tu,Tv) <= beta(M_k) M_k
    KannanGeraghtyDimK, ///< T on X^k, Kannan-style right side scaled by beta/2
    ExtKannanGeraghtyHk,
    FisherGeraghtyDimK, ///< T on X^k, Fisher-style right side scaled by beta/2
    ExtFisherGeraghtyHk,
  };

  Family family = Family::Hk;
  std::size_t k = 1;
  double c = 0.0;

  static ContractionKind banach(double c) { return make(Family::Banach, 1, c); }
  static ContractionKind geraghty() { return make(Family::Geraghty, 1, 0.0); }
  static ContractionKind kannan(double c) { return make(Family::Kannan, 1, c); }
  static ContractionKind fisher(double c) { return make(Family::Fisher, 1, c); }
  static ContractionKind hk(std::size_t k) { return make(Family::Hk, k, 0.0); }
  static ContractionKind kannan_geraghty_dim(std::size_t k) {
    return make(Family::KannanGeraghtyDimK, k, 0.0);
  }
  /// The Kannan-Geraghty self map is the dimension-1 case.
  static ContractionKind kannan_geraghty_self() { return kannan_geraghty_dim(1); }
  static ContractionKind ext_kannan_geraghty(std::size_t k) {
    return make(Family::ExtKannanGeraghtyHk, k, 0.0);
  }
  static ContractionKind fisher_geraghty_dim(std::size_t k) {
    return make(Family::FisherGeraghtyDimK, k, 0.0);
  }
  static ContractionKind ext_fisher_geraghty(std::size_t k) {
    return make(Family::ExtFisherGeraghtyHk, k, 0.0);
  }

  /// Parses a family name as written in problem files (e.g. "Hk",
  /// "ExtFisherGeraghtyHk", "KannanGeraghtySelf").
  static ContractionKind parse(std::string_view name, std::size_t k, double c) {
    if (name == "Banach") return banach(c);
    if (name == "Geraghty") return geraghty();
    if (name == "Kannan") return kannan(c);
    if (name == "Fisher") return fisher(c);
    if (name == "KannanGeraghtySelf") return kannan_geraghty_self();
    if (name == "Hk") return hk(k);
    if (name == "KannanGeraghtyDimK") return kannan_geraghty_dim(k);
    if (name == "ExtKannanGeraghtyHk") return ext_kannan_geraghty(k);
    if (name == "FisherGeraghtyDimK") return fisher_geraghty_dim(k);
    if (name == "ExtFisherGeraghtyHk") return ext_fisher_geraghty(k);
    throw InvalidArgument("unknown contraction kind '" + std::string(name) + "'");
  }

  static bool needs_constant(std::string_view name) {
    return name == "Banach" || name == "Kannan" || name == "Fisher";
  }

  bool uses_beta() const noexcept {
    return family != Family::Banach && family != Family::Kannan && family != Family::Fisher;
  }

  std::string name() const {
    switch (family) {
    case Family::Banach: return "Banach(" + describe(c) + ")";
    case Family::Geraghty: return "Geraghty";
    case Family::Kannan: return "Kannan(" + describe(c) + ")";
    case Family::Fisher: return "Fisher(" + describe(c) + ")";
    case Family::Hk: return "Hk(" + std::to_string(k) + ")";
    case Family::KannanGeraghtyDimK: return "KannanGeraghtyDimK(" + std::to_string(k) + ")";
    case Family::ExtKannanGeraghtyHk: return "ExtKannanGeraghtyHk(" + std::to_string(k) + ")";
    case Family::FisherGeraghtyDimK: return "FisherGeraghtyDimK(" + std::to_string(k) + ")";
    case Family::ExtFisherGeraghtyHk: return "ExtFisherGeraghtyHk(" + std::to_string(k) + ")";
    }
    return "?";
  }

private:
  static ContractionKind make(Family f, std::size_t k, double c) {
    if (k == 0) throw InvalidArgument("contraction dimension k must be >= 1");
    if (f == Family::Banach && !(c > 0.0 && c < 1.0))
      throw InvalidArgument("Banach constant must lie in (0,1)");
    if ((f == Family::Kannan || f == Family::Fisher) && !(c > 0.0 && c < 0.5))
      throw InvalidArgument("Kannan/Fisher constant must lie in (0,1/2)");
    return ContractionKind{f, k, c};
  }
};

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Evaluates both sides of the inequality for `kind` at the pair (u, v).
///
/// u and v must be hatted at k (at most k-1 prefix entries); the classical
/// k = 1 kinds therefore take constant sequences.
template <class P, class Op, class Metric>
  requires HatOperator<Op, P> && MetricFor<Metric, P>
Sides lhs_rhs(const ContractionKind& kind, const Op& T, const GeraghtyFn& beta,
              const HatSequence<P>& u, const HatSequence<P>& v, const Metric& d) {
  using F = ContractionKind::Family;
  const std::size_t k = kind.k;
  if (u.stabilization_index() > k || v.stabilization_index() > k)
    throw ArityMismatch(kind.name() + " expects tuples hatted at " + std::to_string(k) +
                        ", got stabilization indices " + std::to_string(u.stabilization_index()) +
                        " and " + std::to_string(v.stabilization_index()));

  const P tu = invoke_operator<P>(T, u);
  const P tv = invoke_operator<P>(T, v);
  const P& uk = u.at(k);
  const P& vk = v.at(k);
  auto dist = [&d](const P& a, const P& b) { return static_cast<double>(d(a, b)); };

  Sides s;
  s.lhs = dist(tu, tv);
  switch (kind.family) {
  case F::Banach: s.rhs = kind.c * dist(uk, vk); break;
  case F::Geraghty: {
    double duv = dist(uk, vk);
    s.rhs = beta(duv) * duv;
    break;
  }
  case F::Kannan: s.rhs = kind.c * (dist(tu, uk) + dist(tv, vk)); break;
  case F::Fisher: s.rhs = kind.c * (dist(tu, vk) + dist(tv, uk)); break;
  case F::Hk: {
    double m = m_k(T, u, v, k, d);
    s.rhs = beta(m) * m;
    break;
  }
  case F::KannanGeraghtyDimK:
  case F::ExtKannanGeraghtyHk:
    s.rhs = beta(dist(uk, vk)) / 2.0 * (dist(tu, uk) + dist(tv, vk));
    break;
  case F::FisherGeraghtyDimK:
  case F::ExtFisherGeraghtyHk:
    s.rhs = beta(dist(uk, vk)) / 2.0 * (dist(tu, vk) + dist(tv, uk));
    break;
  }
  return s;
}

/// Finite-arity form: u and v are k-tuples and T acts on X^k.
template <class P, class Op, class Metric>
  requires FiniteOperator<Op, P> && MetricFor<Metric, P>
Sides lhs_rhs(const ContractionKind& kind, const Op& T, const GeraghtyFn& beta,
              std::span<const P> u, std::span<const P> v, const Metric& d) {
  if (u.size() != kind.k || v.size() != kind.k)
    throw ArityMismatch(kind.name() + " expects " + std::to_string(kind.k) + "-tuples, got " +
                        std::to_string(u.size()) + " and " + std::to_string(v.size()));
  auto lifted = first_entries<P>(kind.k, std::cref(T));
  return lhs_rhs(kind, lifted, beta, hat_from(u), hat_from(v), d);
}

/// Random points plus a small fixed set always tried first.
template <class P>
struct PointSampler {
  std::function<P(std::mt19937_64&)> draw;
  std::vector<P> boundary;
};

/// Uniform reals on [lo, hi] with the endpoints and midpoint as boundary set.
inline PointSampler<double> uniform_interval(Interval dom) {
  return {[dom](std::mt19937_64& rng) {
            return std::uniform_real_distribution<double>(dom.lower, dom.upper)(rng);
          },
          {dom.lower, dom.midpoint(), dom.upper}};
}

struct FalsifyConfig {
  std::size_t n_samples = 10000;
  std::uint64_t seed = 0;
};

/// lhs > rhs + tolerance counts as a violation.
inline constexpr double kViolationTolerance = 1e-12;

template <class P>
struct Counterexample {
  HatSequence<P> u;
  HatSequence<P> v;
  double lhs;
  double rhs;
  std::size_t sample_index;
};

template <class P>
struct FalsificationReport {
  std::string kind;
  std::string beta;
  std::size_t samples_tried = 0;
  std::optional<Counterexample<P>> counterexample;
  double max_ratio = 0.0; ///< max lhs/rhs over samples with rhs > 0

  bool passed() const noexcept { return !counterexample.has_value(); }
};

/// Searches for a pair violating the inequality of `kind`.
///
/// The boundary grid (every combination of boundary points for the prefix
/// and tail of u and v) is tried first, then `n_samples` random pairs.
/// Stops at the first violation. Deterministic for a given seed.
template <class P, class Op, class Metric>
  requires HatOperator<Op, P> && MetricFor<Metric, P>
FalsificationReport<P> falsify(const ContractionKind& kind, const Op& T, const GeraghtyFn& beta,
                               const Metric& d, const PointSampler<P>& sampler,
                               const FalsifyConfig& cfg) {
  FalsificationReport<P> rep;
  rep.kind = kind.name();
  rep.beta = kind.uses_beta() ? beta.name() : "";
  const std::size_t k = kind.k;

  auto evaluate = [&](HatSequence<P> u, HatSequence<P> v) {
    const std::size_t index = rep.samples_tried++;
    Sides s;
    try {
      s = lhs_rhs(kind, T, beta, u, v, d);
    } catch (const OperatorFailure& e) {
      throw OperatorFailure(e.what(), "sample " + std::to_string(index) + ": u=" + describe(u) +
                                          " v=" + describe(v));
    }
    if (s.rhs > 0.0)
      rep.max_ratio = std::max(rep.max_ratio, s.lhs / s.rhs);
    else if (s.lhs > 0.0)
      rep.max_ratio = std::numeric_limits<double>::infinity();
    if (s.lhs > s.rhs + kViolationTolerance) {
      rep.counterexample = Counterexample<P>{std::move(u), std::move(v), s.lhs, s.rhs, index};
      return true;
    }
    return false;
  };

  const auto& B = sampler.boundary;
  const std::size_t prefix_choices = k > 1 ? B.size() : 1;
  for (std::size_t a = 0; a < prefix_choices; ++a)
    for (const P& ut : B)
      for (std::size_t c = 0; c < prefix_choices; ++c)
        for (const P& vt : B) {
          std::vector<P> up(k - 1, B[a]), vp(k - 1, B[c]);
          if (evaluate(HatSequence<P>(std::move(up), ut), HatSequence<P>(std::move(vp), vt)))
            return rep;
        }

  std::mt19937_64 rng(cfg.seed);
  auto draw_tuple = [&]() {
    std::vector<P> pre;
    pre.reserve(k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) pre.push_back(sampler.draw(rng));
    P tail = sampler.draw(rng);
    return HatSequence<P>(std::move(pre), std::move(tail));
  };
  for (std::size_t i = 0; i < cfg.n_samples; ++i) {
    auto u = draw_tuple();
    auto v = draw_tuple();
    if (evaluate(std::move(u), std::move(v))) return rep;
  }
  return rep;
}

} // namespace picardo

#endif // PICARDO_CONTRACTION_HPP
