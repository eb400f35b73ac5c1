#ifndef PICARDO_GERAGHTY_HPP
#define PICARDO_GERAGHTY_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "picardo/errors.hpp"
#include "picardo/metric.hpp"

namespace picardo {

/// A function beta: [0, inf) -> [0, 1) of the Geraghty class.
///
/// Built-in families are members of the class analytically: a constant c < 1
/// never approaches 1, while 1/(1+t) and e^{-t} tend to 1 only as t -> 0.
/// Both of the latter equal 1 at t = 0; beta is only ever applied to a
/// distance there, so beta_sanity accepts beta(0) <= 1 and requires the strict
/// bound for t > 0. User functions get the sampled codomain check only.
class GeraghtyFn {
public:
  enum class Family { Constant, Reciprocal1Plus, ExpDecay, User };

  static GeraghtyFn constant(double c) { return GeraghtyFn(Family::Constant, c, {}, "constant"); }
  static GeraghtyFn reciprocal_1plus() {
    return GeraghtyFn(Family::Reciprocal1Plus, 0.0, {}, "reciprocal");
  }
  static GeraghtyFn exp_decay() { return GeraghtyFn(Family::ExpDecay, 0.0, {}, "exp-decay"); }
  static GeraghtyFn user(std::function<double(double)> fn, std::string label = "user") {
    if (!fn) throw InvalidArgument("user beta is empty");
    return GeraghtyFn(Family::User, 0.0, std::move(fn), std::move(label));
  }

  double operator()(double t) const {
    switch (family_) {
    case Family::Constant: return c_;
    case Family::Reciprocal1Plus: return 1.0 / (1.0 + t);
    case Family::ExpDecay: return std::exp(-t);
    case Family::User: return fn_(t);
    }
    return 0.0;
  }

  Family family() const noexcept { return family_; }
  double parameter() const noexcept { return c_; }
  const std::string& label() const noexcept { return label_; }

  /// Whether the limit condition beta(t_n) -> 1 => t_n -> 0 is known to hold.
  bool certified() const noexcept {
    switch (family_) {
    case Family::Constant: return c_ > 0.0 && c_ < 1.0;
    case Family::Reciprocal1Plus:
    case Family::ExpDecay: return true;
    case Family::User: return false;
    }
    return false;
  }

  std::string name() const {
    if (family_ == Family::Constant) return "constant(" + describe(c_) + ")";
    return label_;
  }

private:
  GeraghtyFn(Family f, double c, std::function<double(double)> fn, std::string label)
      : family_(f), c_(c), fn_(std::move(fn)), label_(std::move(label)) {}

  Family family_;
  double c_;
  std::function<double(double)> fn_;
  std::string label_;
};

struct BetaSanityReport {
  bool passed = true;
  std::size_t samples = 0;
  bool certified = false;
  double max_value = 0.0;            ///< largest beta observed
  std::optional<double> violating_t; ///< first failing argument
  std::optional<double> violating_value;
};

/// Checks 0 <= beta(t) < 1 on t = 0 and `samples` log-spaced points in
/// [1e-6, 1e6]. Built-in families must additionally carry their certificate.
inline BetaSanityReport beta_sanity(const GeraghtyFn& beta, std::size_t samples = 1000) {
  if (samples == 0) throw InvalidArgument("beta_sanity needs at least one sample");
  BetaSanityReport r;
  r.certified = beta.certified();

  auto check = [&](double t, bool at_zero) {
    double b = beta(t);
    ++r.samples;
    if (std::isfinite(b)) r.max_value = std::max(r.max_value, b);
    bool ok = std::isfinite(b) && b >= 0.0 && (at_zero ? b <= 1.0 : b < 1.0);
    if (!ok && r.passed) {
      r.passed = false;
      r.violating_t = t;
      r.violating_value = b;
    }
  };

  check(0.0, true);
  const double lo = std::log10(1e-6), hi = std::log10(1e6);
  for (std::size_t i = 0; i < samples; ++i) {
    double frac = samples == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(samples - 1);
    check(std::pow(10.0, lo + frac * (hi - lo)), false);
  }
  if (beta.family() != GeraghtyFn::Family::User && !r.certified && r.passed) {
    r.passed = false;
    r.violating_t = 0.0;
    r.violating_value = beta(0.0);
  }
  return r;
}

/// Throwing form of beta_sanity.
inline void require_beta(const GeraghtyFn& beta, std::size_t samples = 1000) {
  auto r = beta_sanity(beta, samples);
  if (!r.passed) throw OutOfRange(*r.violating_t, *r.violating_value);
}

} // namespace picardo

#endif // PICARDO_GERAGHTY_HPP
