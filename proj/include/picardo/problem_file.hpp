#ifndef PICARDO_PROBLEM_FILE_HPP
#define PICARDO_PROBLEM_FILE_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <variant>
#include <vector>

#include "picardo/contraction.hpp"
#include "picardo/errors.hpp"
#include "picardo/expression.hpp"
#include "picardo/geraghty.hpp"
#include "picardo/integral.hpp"
#include "picardo/metric.hpp"
#include "picardo/quadrature.hpp"

namespace picardo {

struct QuadratureSpec {
  QuadratureRule::Kind kind = QuadratureRule::Kind::GaussLegendre;
  std::size_t count = 16;

  QuadratureRule rule(std::uint64_t seed) const {
    switch (kind) {
    case QuadratureRule::Kind::GaussLegendre: return QuadratureRule::gauss(count);
    case QuadratureRule::Kind::CompositeTrapezoid: return QuadratureRule::trapezoid(count);
    case QuadratureRule::Kind::MonteCarlo: return QuadratureRule::monte_carlo(count, seed);
    }
    throw InvalidArgument("unknown quadrature kind");
  }

  std::string text() const { return rule(0).name(); }

  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

/// A Geraghty function as written in a problem file.
struct BetaSpec {
  enum class Kind { Constant, Reciprocal, ExpDecay, Expr };
  Kind kind = Kind::Constant;
  double value = 0.5;               ///< Constant
  std::optional<Expression> expr;   ///< Expr, in the variable z

  GeraghtyFn make() const {
    switch (kind) {
    case Kind::Constant: return GeraghtyFn::constant(value);
    case Kind::Reciprocal: return GeraghtyFn::reciprocal_1plus();
    case Kind::ExpDecay: return GeraghtyFn::exp_decay();
    case Kind::Expr: {
      BoundExpression e(*expr, {"z"});
      return GeraghtyFn::user([e](double z) { return e(std::span<const double>(&z, 1)); },
                              "expr " + expr->text());
    }
    }
    throw InvalidArgument("unknown beta kind");
  }

  std::string text() const {
    switch (kind) {
    case Kind::Constant: return "constant " + describe(value);
    case Kind::Reciprocal: return "reciprocal";
    case Kind::ExpDecay: return "exp-decay";
    case Kind::Expr: return "expr " + expr->text();
    }
    return "?";
  }

  friend bool operator==(const BetaSpec&, const BetaSpec&) = default;
};

struct FredholmSpec {
  std::size_t n_trunc = 1;
  Expression kernel;
  Expression forcing;
  double delta = 0.5;
  double gamma = 2.0;
  QuadratureSpec quadrature;

  friend bool operator==(const FredholmSpec&, const FredholmSpec&) = default;
};

struct UrysohnSpec {
  std::size_t n_trunc = 1;
  Interval domain;
  Expression integrand;
  Expression forcing;
  double tau = 2.0;
  double alpha = 1.0;
  QuadratureSpec quadrature;
  Interval u_range{-10.0, 10.0};
  std::size_t lipschitz_samples = 10000;

  friend bool operator==(const UrysohnSpec&, const UrysohnSpec&) = default;
};

enum class Engine { Finite, Infinite };

struct IterationSpec {
  std::size_t k = 1;
  Expression op;
  Interval domain;
  std::vector<double> base;
  Engine engine = Engine::Infinite;

  friend bool operator==(const IterationSpec&, const IterationSpec&) = default;
};

struct CheckSpec {
  std::size_t k = 1;
  Expression op;
  Interval domain;
  std::string contraction;
  std::optional<double> c;
  std::optional<BetaSpec> beta;
  std::size_t samples = 10000;

  ContractionKind kind() const { return ContractionKind::parse(contraction, k, c.value_or(0.0)); }

  friend bool operator==(const CheckSpec&, const CheckSpec&) = default;
};

struct IterationSettings {
  double eps_step = 1e-12;
  double eps_res = 1e-12;
  std::size_t max_iter = 10000;

  friend bool operator==(const IterationSettings&, const IterationSettings&) = default;
};

struct ProblemFile {
  std::variant<FredholmSpec, UrysohnSpec, IterationSpec, CheckSpec> body;
  std::uint64_t seed = 0;
  IterationSettings iteration;

  std::string kind_name() const {
    static const char* names[] = {"fredholm", "urysohn", "operator-iteration", "contraction-check"};
    return names[body.index()];
  }

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

/// Expression slot names used by the solvers: t1..tn, then s1..sn, then u.
inline std::vector<std::string> kernel_slots(std::size_t n, bool with_u) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("t" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) v.push_back("s" + std::to_string(i));
  if (with_u) v.emplace_back("u");
  return v;
}

inline std::vector<std::string> forcing_slots(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("t" + std::to_string(i));
  return v;
}

inline std::vector<std::string> operator_slots(std::size_t k) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= k; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

namespace detail {

struct RawValue {
  std::string text;
  std::size_t line = 0;
  std::size_t key_column = 0;
  std::size_t value_column = 0;
};

struct RawSection {
  std::string name;
  std::size_t line = 0;
  std::map<std::string, RawValue> entries;
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool is_key_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '-';
}

/// Splits the text into sections of raw key/value pairs.
inline std::vector<RawSection> scan(std::string_view text) {
  std::vector<RawSection> out;
  std::size_t line_no = 0;
  while (!text.empty() || line_no == 0) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);

    const std::size_t lead = std::min(line.find_first_not_of(" \t"), line.size());
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') {
      if (text.empty()) break;
      continue;
    }

    if (body.front() == '[') {
      const std::size_t close = body.find(']');
      if (close == std::string_view::npos) throw ParseError("unterminated section header", line_no, lead + 1);
      std::string_view rest = trim(body.substr(close + 1));
      if (!rest.empty() && rest.front() != '#')
        throw ParseError("unexpected text after section header", line_no, lead + close + 2);
      out.push_back({std::string(trim(body.substr(1, close - 1))), line_no, {}});
    } else {
      std::size_t k = 0;
      while (k < body.size() && is_key_char(body[k])) ++k;
      if (k == 0) throw ParseError("expected a key", line_no, lead + 1);
      std::string key(body.substr(0, k));
      std::size_t eq = body.find_first_not_of(" \t", k);
      if (eq == std::string_view::npos || body[eq] != '=')
        throw ParseError("expected '=' after key '" + key + "'", line_no, lead + (eq == std::string_view::npos ? body.size() : eq) + 1);
      std::size_t vstart = body.find_first_not_of(" \t", eq + 1);
      if (vstart == std::string_view::npos) throw ParseError("missing value for '" + key + "'", line_no, lead + eq + 2);

      std::string value;
      std::size_t value_column = lead + vstart + 1;
      if (body[vstart] == '"') {
        std::size_t close = body.find('"', vstart + 1);
        if (close == std::string_view::npos)
          throw ParseError("unterminated quoted value", line_no, lead + vstart + 1);
        value = std::string(body.substr(vstart + 1, close - vstart - 1));
        ++value_column;
        std::string_view rest = trim(body.substr(close + 1));
        if (!rest.empty() && rest.front() != '#')
          throw ParseError("unexpected text after quoted value", line_no, lead + close + 2);
      } else {
        std::string_view v = body.substr(vstart);
        v = trim(v.substr(0, v.find('#')));
        if (v.empty()) throw ParseError("missing value for '" + key + "'", line_no, lead + vstart + 1);
        value = std::string(v);
      }
      if (out.empty()) throw ValidationError("key '" + key + "' outside a section", line_no, lead + 1);
      auto [it, fresh] = out.back().entries.try_emplace(key, RawValue{value, line_no, lead + 1, value_column});
      if (!fresh)
        throw ValidationError("duplicate key '" + key + "' (first set on line " +
                                  std::to_string(it->second.line) + ")",
                              line_no, lead + 1);
    }
    if (text.empty()) break;
  }
  return out;
}

/// Typed, strictly-checked access to one section's entries.
class SectionReader {
public:
  explicit SectionReader(const RawSection& s) : s_(s) {}

  bool has(const std::string& key) const { return s_.entries.count(key) != 0; }

  const RawValue& raw(const std::string& key) {
    used_.insert(key);
    auto it = s_.entries.find(key);
    if (it == s_.entries.end())
      throw ValidationError("[" + s_.name + "] is missing required key '" + key + "'", s_.line, 1);
    return it->second;
  }

  [[noreturn]] void invalid(const std::string& key, const std::string& why) {
    const RawValue& v = raw(key);
    throw ValidationError(key + ": " + why, v.line, v.value_column);
  }

  double number(const std::string& key) {
    const RawValue& v = raw(key);
    auto x = parse_number(v.text);
    if (!x) invalid(key, "expected a number, got '" + v.text + "'");
    return *x;
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  std::size_t count(const std::string& key, std::size_t min_value) {
    const RawValue& v = raw(key);
    std::uint64_t n = 0;
    auto [p, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), n);
    if (ec != std::errc() || p != v.text.data() + v.text.size())
      invalid(key, "expected a non-negative integer, got '" + v.text + "'");
    if (n < min_value) invalid(key, "must be at least " + std::to_string(min_value));
    return static_cast<std::size_t>(n);
  }

  std::size_t count_or(const std::string& key, std::size_t min_value, std::size_t fallback) {
    return has(key) ? count(key, min_value) : fallback;
  }

  std::vector<double> numbers(const std::string& key) {
    const RawValue& v = raw(key);
    std::vector<double> out;
    std::string_view rest = v.text;
    while (true) {
      std::size_t b = rest.find_first_not_of(" \t,");
      if (b == std::string_view::npos) break;
      rest.remove_prefix(b);
      std::size_t e = rest.find_first_of(" \t,");
      auto x = parse_number(rest.substr(0, e));
      if (!x) invalid(key, "expected numbers, got '" + v.text + "'");
      out.push_back(*x);
      if (e == std::string_view::npos) break;
      rest.remove_prefix(e);
    }
    return out;
  }

  Interval interval(const std::string& key, Interval fallback) {
    if (!has(key)) return fallback;
    std::vector<double> xs = numbers(key);
    if (xs.size() != 2) invalid(key, "expected two numbers 'lower upper'");
    if (!(xs[0] < xs[1])) invalid(key, "lower bound must be below upper bound");
    return {xs[0], xs[1]};
  }

  Expression expression(const std::string& key, const std::vector<std::string>& legal) {
    const RawValue& v = raw(key);
    Expression e;
    try {
      e = Expression::parse(v.text);
    } catch (const ParseError& err) {
      throw ParseError(key + ": " + err.message(), v.line, v.value_column + err.column() - 1);
    }
    for (const Expression::Node& n : e.nodes()) {
      if (n.op != Expression::Op::Variable) continue;
      const std::string& name = e.variables()[n.index];
      bool ok = false;
      for (const auto& l : legal) ok = ok || l == name;
      if (!ok) {
        std::string allowed;
        for (const auto& l : legal) allowed += (allowed.empty() ? "" : ", ") + l;
        throw ValidationError(key + ": variable '" + name + "' is not allowed here (allowed: " +
                                  (allowed.empty() ? "none" : allowed) + ")",
                              v.line, v.value_column + n.span.begin);
      }
    }
    return e;
  }

  QuadratureSpec quadrature(const std::string& key) {
    QuadratureSpec q;
    if (!has(key)) return q;
    const RawValue& v = raw(key);
    std::string_view t = v.text;
    std::size_t sp = t.find_first_of(" \t");
    std::string_view name = t.substr(0, sp);
    if (name == "gauss") q.kind = QuadratureRule::Kind::GaussLegendre;
    else if (name == "trapezoid") q.kind = QuadratureRule::Kind::CompositeTrapezoid;
    else if (name == "montecarlo") q.kind = QuadratureRule::Kind::MonteCarlo;
    else invalid(key, "expected 'gauss N', 'trapezoid N' or 'montecarlo N'");
    std::string_view n = sp == std::string_view::npos ? std::string_view{} : trim(t.substr(sp));
    std::uint64_t c = 0;
    auto [p, ec] = std::from_chars(n.data(), n.data() + n.size(), c);
    if (n.empty() || ec != std::errc() || p != n.data() + n.size())
      invalid(key, "expected a node count after '" + std::string(name) + "'");
    const std::size_t min_nodes = q.kind == QuadratureRule::Kind::CompositeTrapezoid ? 2 : 1;
    if (c < min_nodes) invalid(key, "node count must be at least " + std::to_string(min_nodes));
    q.count = static_cast<std::size_t>(c);
    return q;
  }

  BetaSpec beta(const std::string& key) {
    const RawValue& v = raw(key);
    std::string_view t = v.text;
    std::size_t sp = t.find_first_of(" \t");
    std::string_view head = t.substr(0, sp);
    std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim(t.substr(sp));
    BetaSpec b;
    if (head == "constant") {
      auto x = parse_number(rest);
      if (!x) invalid(key, "expected 'constant X'");
      b.kind = BetaSpec::Kind::Constant;
      b.value = *x;
    } else if (head == "reciprocal" && rest.empty()) {
      b.kind = BetaSpec::Kind::Reciprocal;
    } else if (head == "exp-decay" && rest.empty()) {
      b.kind = BetaSpec::Kind::ExpDecay;
    } else if (head == "expr" && !rest.empty()) {
      b.kind = BetaSpec::Kind::Expr;
      const std::size_t offset = static_cast<std::size_t>(rest.data() - t.data());
      try {
        b.expr = Expression::parse(rest);
      } catch (const ParseError& err) {
        throw ParseError(key + ": " + err.message(), v.line, v.value_column + offset + err.column() - 1);
      }
      for (const auto& name : b.expr->variables())
        if (name != "z")
          throw ValidationError(key + ": variable '" + name + "' is not allowed here (allowed: z)",
                                v.line, v.value_column + offset);
    } else {
      invalid(key, "expected 'constant X', 'reciprocal', 'exp-decay' or 'expr <in z>'");
    }
    return b;
  }

  std::string word(const std::string& key) { return raw(key).text; }

  /// Rejects keys that were never read.
  void finish() const {
    for (const auto& [key, v] : s_.entries)
      if (!used_.count(key))
        throw ValidationError("unknown key '" + key + "' in [" + s_.name + "]", v.line, v.key_column);
  }

  static std::optional<double> parse_number(std::string_view s) {
    double x = 0.0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(x))
      return std::nullopt;
    return x;
  }

private:
  const RawSection& s_;
  std::set<std::string> used_;
};

inline void check_positive_fraction(SectionReader& r, const std::string& key, double x) {
  if (!(x > 0.0 && x < 1.0)) r.invalid(key, "must lie in (0,1)");
}

inline FredholmSpec read_fredholm(SectionReader& r) {
  FredholmSpec s;
  s.n_trunc = r.count("n_trunc", 1);
  if (s.n_trunc > kMaxTensorDimension) r.invalid("n_trunc", "at most " + std::to_string(kMaxTensorDimension) + " dimensions are supported");
  s.kernel = r.expression("kernel", kernel_slots(s.n_trunc, false));
  s.forcing = r.expression("forcing", forcing_slots(s.n_trunc));
  s.delta = r.number("delta");
  check_positive_fraction(r, "delta", s.delta);
  s.gamma = r.number("gamma");
  if (!(s.gamma > 0.0)) r.invalid("gamma", "must be positive");
  s.quadrature = r.quadrature("quadrature");
  return s;
}

inline UrysohnSpec read_urysohn(SectionReader& r) {
  UrysohnSpec s;
  s.n_trunc = r.count("n_trunc", 1);
  if (s.n_trunc > kMaxTensorDimension) r.invalid("n_trunc", "at most " + std::to_string(kMaxTensorDimension) + " dimensions are supported");
  s.domain = r.interval("domain", Interval{});
  s.integrand = r.expression("integrand", kernel_slots(s.n_trunc, true));
  s.forcing = r.expression("forcing", forcing_slots(s.n_trunc));
  s.tau = r.number("tau");
  if (!(s.tau > 0.0)) r.invalid("tau", "must be positive");
  s.alpha = r.number_or("alpha", 1.0);
  if (r.has("alpha") && !(s.alpha > 0.0 && s.alpha <= 1.0)) r.invalid("alpha", "must lie in (0,1]");
  s.quadrature = r.quadrature("quadrature");
  s.u_range = r.interval("u_range", Interval{-10.0, 10.0});
  s.lipschitz_samples = r.count_or("lipschitz_samples", 0, 10000);
  return s;
}

inline IterationSpec read_iteration(SectionReader& r) {
  IterationSpec s;
  s.k = r.count("k", 1);
  s.op = r.expression("operator", operator_slots(s.k));
  s.domain = r.interval("domain", Interval{});
  if (r.has("base")) {
    s.base = r.numbers("base");
    if (s.base.size() != s.k)
      r.invalid("base", "expected " + std::to_string(s.k) + " base points, got " + std::to_string(s.base.size()));
  } else {
    s.base.assign(s.k, s.domain.midpoint());
  }
  if (r.has("engine")) {
    const std::string e = r.word("engine");
    if (e == "finite") s.engine = Engine::Finite;
    else if (e == "infinite") s.engine = Engine::Infinite;
    else r.invalid("engine", "expected 'finite' or 'infinite'");
  }
  return s;
}

inline CheckSpec read_check(SectionReader& r) {
  CheckSpec s;
  s.k = r.count("k", 1);
  s.op = r.expression("operator", operator_slots(s.k));
  s.domain = r.interval("domain", Interval{});
  s.contraction = r.word("contraction");
  const bool wants_c = ContractionKind::needs_constant(s.contraction);
  if (wants_c) s.c = r.number("c");
  try {
    ContractionKind kind = ContractionKind::parse(s.contraction, s.k, s.c.value_or(0.0));
    if (kind.uses_beta()) s.beta = r.beta("beta");
    if (kind.uses_beta() && r.has("c")) r.invalid("c", "not used by " + s.contraction);
    if (!kind.uses_beta() && r.has("beta")) r.invalid("beta", "not used by " + s.contraction);
  } catch (const InvalidArgument& e) {
    r.invalid(wants_c ? "c" : "contraction", e.what());
  }
  s.samples = r.count_or("samples", 1, 10000);
  return s;
}

inline IterationSettings read_settings(SectionReader& r) {
  IterationSettings s;
  s.eps_step = r.number_or("eps_step", s.eps_step);
  if (r.has("eps_step") && !(s.eps_step > 0.0)) r.invalid("eps_step", "must be positive");
  s.eps_res = r.number_or("eps_res", s.eps_res);
  if (r.has("eps_res") && !(s.eps_res > 0.0)) r.invalid("eps_res", "must be positive");
  s.max_iter = r.count_or("max_iter", 1, s.max_iter);
  return s;
}

} // namespace detail

/// Parses and validates a problem file.
///
///     file     = { line }
///     line     = blank | comment | section | entry
///     section  = "[" name "]"
///     entry    = key "=" ( quoted | bare )
///     comment  = "#" text-to-end-of-line
///
/// Exactly one kind section ([fredholm], [urysohn], [operator-iteration]
/// or [contraction-check]) is required; an optional [iteration] section sets
/// eps_step, eps_res and max_iter.
inline ProblemFile parse_problem(std::string_view text) {
  std::vector<detail::RawSection> sections = detail::scan(text);
  ProblemFile pf;
  std::optional<std::size_t> kind_line, iter_line;
  for (const auto& sec : sections) {
    detail::SectionReader r(sec);
    if (sec.name == "iteration") {
      if (iter_line) throw ValidationError("duplicate [iteration] section", sec.line, 1);
      iter_line = sec.line;
      pf.iteration = detail::read_settings(r);
      r.finish();
      continue;
    }
    const bool known = sec.name == "fredholm" || sec.name == "urysohn" ||
                       sec.name == "operator-iteration" || sec.name == "contraction-check";
    if (!known) throw ValidationError("unknown section [" + sec.name + "]", sec.line, 2);
    if (kind_line)
      throw ValidationError("second problem kind [" + sec.name + "] (first on line " +
                                std::to_string(*kind_line) + ")",
                            sec.line, 1);
    kind_line = sec.line;
    if (sec.name == "fredholm") pf.body = detail::read_fredholm(r);
    else if (sec.name == "urysohn") pf.body = detail::read_urysohn(r);
    else if (sec.name == "operator-iteration") pf.body = detail::read_iteration(r);
    else pf.body = detail::read_check(r);
    if (r.has("seed")) pf.seed = static_cast<std::uint64_t>(r.count("seed", 0));
    r.finish();
  }
  if (!kind_line) throw ParseError("missing kind", 1, 1);
  return pf;
}

namespace detail {

inline std::string quoted(const std::string& s) { return "\"" + s + "\""; }

inline std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (double x : xs) out += (out.empty() ? "" : " ") + describe(x);
  return out;
}

inline std::string interval_text(Interval i) { return describe(i.lower) + " " + describe(i.upper); }

} // namespace detail

/// Writes every field explicitly, so parsing the output reproduces `pf`.
inline std::string serialize(const ProblemFile& pf) {
  using detail::quoted;
  std::string out;
  auto kv = [&out](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
  out += "[" + pf.kind_name() + "]\n";
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, FredholmSpec>) {
          kv("n_trunc", std::to_string(s.n_trunc));
          kv("kernel", quoted(s.kernel.text()));
          kv("forcing", quoted(s.forcing.text()));
          kv("delta", describe(s.delta));
          kv("gamma", describe(s.gamma));
          kv("quadrature", quoted(s.quadrature.text()));
        } else if constexpr (std::is_same_v<S, UrysohnSpec>) {
          kv("n_trunc", std::to_string(s.n_trunc));
          kv("domain", quoted(detail::interval_text(s.domain)));
          kv("integrand", quoted(s.integrand.text()));
          kv("forcing", quoted(s.forcing.text()));
          kv("tau", describe(s.tau));
          kv("alpha", describe(s.alpha));
          kv("quadrature", quoted(s.quadrature.text()));
          kv("u_range", quoted(detail::interval_text(s.u_range)));
          kv("lipschitz_samples", std::to_string(s.lipschitz_samples));
        } else if constexpr (std::is_same_v<S, IterationSpec>) {
          kv("k", std::to_string(s.k));
          kv("operator", quoted(s.op.text()));
          kv("domain", quoted(detail::interval_text(s.domain)));
          kv("base", quoted(detail::join_numbers(s.base)));
          kv("engine", s.engine == Engine::Finite ? "finite" : "infinite");
        } else {
          kv("k", std::to_string(s.k));
          kv("operator", quoted(s.op.text()));
          kv("domain", quoted(detail::interval_text(s.domain)));
          kv("contraction", s.contraction);
          if (s.c) kv("c", describe(*s.c));
          if (s.beta) kv("beta", quoted(s.beta->text()));
          kv("samples", std::to_string(s.samples));
        }
      },
      pf.body);
  kv("seed", std::to_string(pf.seed));
  out += "\n[iteration]\n";
  kv("eps_step", describe(pf.iteration.eps_step));
  kv("eps_res", describe(pf.iteration.eps_res));
  kv("max_iter", std::to_string(pf.iteration.max_iter));
  return out;
}

} // namespace picardo

#endif // PICARDO_PROBLEM_FILE_HPP
