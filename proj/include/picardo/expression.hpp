#ifndef PICARDO_EXPRESSION_HPP
#define PICARDO_EXPRESSION_HPP

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "picardo/errors.hpp"

namespace picardo {

/// Byte range [begin, end) inside the expression text.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

enum class Builtin { Sin, Cos, Exp, Sqrt, Abs, Asin };

inline const char* builtin_name(Builtin f) {
  switch (f) {
  case Builtin::Sin: return "sin";
  case Builtin::Cos: return "cos";
  case Builtin::Exp: return "exp";
  case Builtin::Sqrt: return "sqrt";
  case Builtin::Abs: return "abs";
  case Builtin::Asin: return "asin";
  }
  return "?";
}

using Bindings = std::map<std::string, double, std::less<>>;

/// Parsed arithmetic expression.
///
/// Grammar (whitespace ignored between tokens):
///
///     expr    = term { ("+" | "-") term }
///     term    = power { ("*" | "/") power }
///     power   = unary [ "^" power ]
///     unary   = ("-" | "+") unary | primary
///     primary = number | "pi" | name | func "(" expr ")" | "(" expr ")"
///     func    = "sin" | "cos" | "exp" | "sqrt" | "abs" | "asin"
///
/// `^` is right-associative and a leading sign belongs to the base, so
/// `-2^2` is 4 and `2^3^2` is 512.
class Expression {
public:
  enum class Op : std::uint8_t { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

  struct Node {
    Op op = Op::Number;
    double value = 0.0;        ///< Number
    std::uint32_t lhs = 0;     ///< operand, or left operand
    std::uint32_t rhs = 0;     ///< right operand
    std::uint32_t index = 0;   ///< Variable: slot in variables(); Call: Builtin
    SourceSpan span;
  };

  static Expression parse(std::string_view text);

  const std::string& text() const noexcept { return text_; }
  /// Distinct variable names in order of first appearance.
  const std::vector<std::string>& variables() const noexcept { return vars_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }

  /// Evaluates with `value(i)` supplying variables()[i].
  template <class Lookup>
  double eval_with(const Lookup& value) const {
    return eval_node(root_, value);
  }

  double eval(const Bindings& b) const {
    std::vector<double> vals;
    vals.reserve(vars_.size());
    for (const auto& name : vars_) {
      auto it = b.find(name);
      if (it == b.end()) throw UnboundVariable(name);
      vals.push_back(it->second);
    }
    return eval_with([&](std::size_t i) { return vals[i]; });
  }

  /// Structural equality: same tree, same constants, same variable names.
  friend bool operator==(const Expression& a, const Expression& b) {
    if (a.nodes_.empty() || b.nodes_.empty()) return a.nodes_.empty() && b.nodes_.empty();
    return a.vars_ == b.vars_ && a.same_subtree(a.root_, b, b.root_);
  }

private:
  friend class ExpressionParser;

  template <class Lookup>
  double eval_node(std::uint32_t i, const Lookup& value) const {
    const Node& n = nodes_[i];
    switch (n.op) {
    case Op::Number: return n.value;
    case Op::Variable: return value(n.index);
    case Op::Negate: return -eval_node(n.lhs, value);
    case Op::Add: return eval_node(n.lhs, value) + eval_node(n.rhs, value);
    case Op::Sub: return eval_node(n.lhs, value) - eval_node(n.rhs, value);
    case Op::Mul: return eval_node(n.lhs, value) * eval_node(n.rhs, value);
    case Op::Div: {
      double a = eval_node(n.lhs, value), b = eval_node(n.rhs, value);
      if (b == 0.0) fail("division by zero", n);
      return a / b;
    }
    case Op::Pow: {
      double a = eval_node(n.lhs, value), b = eval_node(n.rhs, value);
      if (a < 0.0 && std::isfinite(b) && b != std::trunc(b))
        fail("negative base with non-integer exponent", n);
      if (a == 0.0 && b < 0.0) fail("division by zero", n);
      return std::pow(a, b);
    }
    case Op::Call: {
      double x = eval_node(n.lhs, value);
      switch (static_cast<Builtin>(n.index)) {
      case Builtin::Sin: return std::sin(x);
      case Builtin::Cos: return std::cos(x);
      case Builtin::Exp: return std::exp(x);
      case Builtin::Abs: return std::abs(x);
      case Builtin::Sqrt:
        if (x < 0.0) fail("sqrt of a negative number", n);
        return std::sqrt(x);
      case Builtin::Asin:
        if (!(x >= -1.0 && x <= 1.0)) fail("asin argument outside [-1,1]", n);
        return std::asin(x);
      }
    }
    }
    return 0.0;
  }

  [[noreturn]] static void fail(const char* what, const Node& n) {
    throw EvalError(what, n.span.begin, n.span.end);
  }

  bool same_subtree(std::uint32_t i, const Expression& other, std::uint32_t j) const {
    const Node &a = nodes_[i], &b = other.nodes_[j];
    if (a.op != b.op) return false;
    switch (a.op) {
    case Op::Number: return std::bit_cast<std::uint64_t>(a.value) == std::bit_cast<std::uint64_t>(b.value);
    case Op::Variable: return a.index == b.index;
    case Op::Negate: return same_subtree(a.lhs, other, b.lhs);
    case Op::Call: return a.index == b.index && same_subtree(a.lhs, other, b.lhs);
    default: return same_subtree(a.lhs, other, b.lhs) && same_subtree(a.rhs, other, b.rhs);
    }
  }

  std::string text_;
  std::vector<std::string> vars_;
  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
};

class ExpressionParser {
public:
  explicit ExpressionParser(std::string_view text) : src_(text) { e_.text_ = std::string(text); }

  Expression run() {
    skip_space();
    if (pos_ == src_.size()) error("empty expression", pos_);
    e_.root_ = expr();
    skip_space();
    if (pos_ != src_.size()) error("unexpected '" + std::string(1, src_[pos_]) + "'", pos_);
    return std::move(e_);
  }

private:
  static constexpr int kMaxDepth = 200;

  [[noreturn]] static void error(const std::string& msg, std::size_t at) {
    throw ParseError(msg, 0, at + 1);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::uint32_t add(Expression::Node n) {
    e_.nodes_.push_back(n);
    return static_cast<std::uint32_t>(e_.nodes_.size() - 1);
  }

  std::uint32_t binary(Expression::Op op, std::uint32_t l, std::uint32_t r) {
    Expression::Node n;
    n.op = op;
    n.lhs = l;
    n.rhs = r;
    n.span = {e_.nodes_[l].span.begin, e_.nodes_[r].span.end};
    return add(n);
  }

  struct DepthGuard {
    int& d;
    DepthGuard(int& depth, std::size_t at) : d(depth) {
      if (++d > kMaxDepth) error("expression nested too deeply", at);
    }
    ~DepthGuard() { --d; }
  };

  std::uint32_t expr() {
    DepthGuard g(depth_, pos_);
    std::uint32_t l = term();
    for (;;) {
      if (accept('+')) l = binary(Expression::Op::Add, l, term());
      else if (accept('-')) l = binary(Expression::Op::Sub, l, term());
      else return l;
    }
  }

  std::uint32_t term() {
    std::uint32_t l = power();
    for (;;) {
      if (accept('*')) l = binary(Expression::Op::Mul, l, power());
      else if (accept('/')) l = binary(Expression::Op::Div, l, power());
      else return l;
    }
  }

  std::uint32_t power() {
    DepthGuard g(depth_, pos_);
    std::uint32_t base = unary();
    if (accept('^')) return binary(Expression::Op::Pow, base, power());
    return base;
  }

  std::uint32_t unary() {
    DepthGuard g(depth_, pos_);
    skip_space();
    const std::size_t start = pos_;
    if (accept('-')) {
      std::uint32_t x = unary();
      Expression::Node n;
      n.op = Expression::Op::Negate;
      n.lhs = x;
      n.span = {start, e_.nodes_[x].span.end};
      return add(n);
    }
    if (accept('+')) return unary();
    return primary();
  }

  std::uint32_t primary() {
    skip_space();
    if (pos_ == src_.size()) error("unexpected end of expression", pos_);
    const std::size_t start = pos_;
    const char c = src_[pos_];

    if (c == '(') {
      ++pos_;
      std::uint32_t x = expr();
      if (!accept(')')) error("expected ')'", pos_);
      e_.nodes_[x].span = {start, pos_};
      return x;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      const std::string name(src_.substr(start, pos_ - start));
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == '(') {
        std::uint32_t f = function_index(name, start);
        ++pos_;
        std::uint32_t arg = expr();
        if (!accept(')')) error("expected ')' after argument of " + name, pos_);
        Expression::Node n;
        n.op = Expression::Op::Call;
        n.index = f;
        n.lhs = arg;
        n.span = {start, pos_};
        return add(n);
      }
      Expression::Node n;
      n.span = {start, start + name.size()};
      if (name == "pi") {
        n.op = Expression::Op::Number;
        n.value = std::numbers::pi;
        return add(n);
      }
      if (is_function(name)) error("function '" + name + "' needs an argument", start);
      n.op = Expression::Op::Variable;
      n.index = variable_slot(name);
      return add(n);
    }
    error("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::uint32_t number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) digits();
      else pos_ = save;
    }
    double v = 0.0;
    auto [end, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || end != src_.data() + pos_)
      error("malformed number '" + std::string(src_.substr(start, pos_ - start)) + "'", start);
    Expression::Node n;
    n.op = Expression::Op::Number;
    n.value = v;
    n.span = {start, pos_};
    return add(n);
  }

  static bool is_function(const std::string& name) {
    for (const char* f : {"sin", "cos", "exp", "sqrt", "abs", "asin"})
      if (name == f) return true;
    return false;
  }

  static std::uint32_t function_index(const std::string& name, std::size_t at) {
    for (auto f : {Builtin::Sin, Builtin::Cos, Builtin::Exp, Builtin::Sqrt, Builtin::Abs,
                   Builtin::Asin})
      if (name == builtin_name(f)) return static_cast<std::uint32_t>(f);
    error("unknown function '" + name + "'", at);
  }

  std::uint32_t variable_slot(const std::string& name) {
    for (std::size_t i = 0; i < e_.vars_.size(); ++i)
      if (e_.vars_[i] == name) return static_cast<std::uint32_t>(i);
    e_.vars_.push_back(name);
    return static_cast<std::uint32_t>(e_.vars_.size() - 1);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  Expression e_;
};

inline Expression Expression::parse(std::string_view text) { return ExpressionParser(text).run(); }

inline double eval_expr(const Expression& e, const Bindings& b) { return e.eval(b); }

/// An expression with its variables resolved against a fixed list of slot
/// names, so evaluation needs no lookups.
class BoundExpression {
public:
  BoundExpression(Expression e, const std::vector<std::string>& slots) : e_(std::move(e)) {
    for (const auto& v : e_.variables()) {
      std::size_t i = 0;
      while (i < slots.size() && slots[i] != v) ++i;
      if (i == slots.size()) throw UnboundVariable(v);
      map_.push_back(i);
    }
  }

  double operator()(std::span<const double> slots) const {
    return e_.eval_with([&](std::size_t i) { return slots[map_[i]]; });
  }

  const Expression& expression() const noexcept { return e_; }

private:
  Expression e_;
  std::vector<std::size_t> map_;
};

} // namespace picardo

#endif // PICARDO_EXPRESSION_HPP
