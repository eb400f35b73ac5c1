#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "picardo/expression.hpp"

using namespace picardo;

namespace {

double ev(const std::string& text, const Bindings& b = {}) { return Expression::parse(text).eval(b); }

// Reference evaluator: tokenizer plus shunting-yard to postfix, then a stack
// machine. Shares nothing with the library parser.
namespace ref {

struct Token {
  enum Kind { Num, Var, Func, Op, Neg, LParen, RParen } kind;
  double value = 0;
  std::string name;
  char op = 0;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto expects_operand = [&] {
    return out.empty() || out.back().kind == Token::Op || out.back().kind == Token::Neg ||
           out.back().kind == Token::LParen || out.back().kind == Token::Func;
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ') {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = std::stod(s.substr(i), &used);
      out.push_back({Token::Num, v, "", 0});
      i += used;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      std::string name = s.substr(i, j - i);
      i = j;
      if (name == "pi") out.push_back({Token::Num, std::numbers::pi, "", 0});
      else if (i < s.size() && s[i] == '(') out.push_back({Token::Func, 0, name, 0});
      else out.push_back({Token::Var, 0, name, 0});
    } else if (c == '(') {
      out.push_back({Token::LParen, 0, "", 0});
      ++i;
    } else if (c == ')') {
      out.push_back({Token::RParen, 0, "", 0});
      ++i;
    } else {
      if ((c == '-' || c == '+') && expects_operand()) {
        if (c == '-') out.push_back({Token::Neg, 0, "", '~'});
      } else {
        out.push_back({Token::Op, 0, "", c});
      }
      ++i;
    }
  }
  return out;
}

int prec(const Token& t) {
  if (t.kind == Token::Neg) return 4;
  switch (t.op) {
  case '^': return 3;
  case '*':
  case '/': return 2;
  default: return 1;
  }
}

std::vector<Token> to_postfix(const std::vector<Token>& in) {
  std::vector<Token> out, ops;
  for (const Token& t : in) {
    switch (t.kind) {
    case Token::Num:
    case Token::Var: out.push_back(t); break;
    case Token::Func:
    case Token::LParen:
    case Token::Neg: ops.push_back(t); break;
    case Token::Op:
      while (!ops.empty() && (ops.back().kind == Token::Op || ops.back().kind == Token::Neg)) {
        int top = prec(ops.back()), cur = prec(t);
        if (top > cur || (top == cur && t.op != '^')) {
          out.push_back(ops.back());
          ops.pop_back();
        } else {
          break;
        }
      }
      ops.push_back(t);
      break;
    case Token::RParen:
      while (ops.back().kind != Token::LParen) {
        out.push_back(ops.back());
        ops.pop_back();
      }
      ops.pop_back();
      if (!ops.empty() && ops.back().kind == Token::Func) {
        out.push_back(ops.back());
        ops.pop_back();
      }
      break;
    }
  }
  while (!ops.empty()) {
    out.push_back(ops.back());
    ops.pop_back();
  }
  return out;
}

// nullopt marks a domain error.
std::optional<double> eval(const std::string& text, const Bindings& b) {
  std::vector<double> st;
  for (const Token& t : to_postfix(tokenize(text))) {
    if (t.kind == Token::Num) {
      st.push_back(t.value);
    } else if (t.kind == Token::Var) {
      st.push_back(b.at(t.name));
    } else if (t.kind == Token::Neg) {
      st.back() = -st.back();
    } else if (t.kind == Token::Func) {
      double x = st.back();
      if (t.name == "sin") x = std::sin(x);
      else if (t.name == "cos") x = std::cos(x);
      else if (t.name == "exp") x = std::exp(x);
      else if (t.name == "abs") x = std::fabs(x);
      else if (t.name == "sqrt") {
        if (x < 0) return std::nullopt;
        x = std::sqrt(x);
      } else {
        if (x < -1 || x > 1 || std::isnan(x)) return std::nullopt;
        x = std::asin(x);
      }
      st.back() = x;
    } else {
      double r = st.back();
      st.pop_back();
      double l = st.back();
      switch (t.op) {
      case '+': l = l + r; break;
      case '-': l = l - r; break;
      case '*': l = l * r; break;
      case '/':
        if (r == 0) return std::nullopt;
        l = l / r;
        break;
      case '^':
        if (l < 0 && std::isfinite(r) && std::floor(r) != r) return std::nullopt;
        if (l == 0 && r < 0) return std::nullopt;
        l = std::pow(l, r);
        break;
      }
      st.back() = l;
    }
  }
  return st.back();
}

} // namespace ref

class RandomExpr {
public:
  explicit RandomExpr(std::uint64_t seed) : rng_(seed) {}

  std::string expr(int depth) {
    std::string s = term(depth);
    for (int n = pick(3); n > 0; --n) s += choose({" + ", "-", " - ", "+"}) + term(depth);
    return s;
  }

private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::string choose(std::initializer_list<const char*> xs) { return *(xs.begin() + pick(static_cast<int>(xs.size()))); }

  std::string term(int depth) {
    std::string s = power(depth);
    for (int n = pick(3); n > 0; --n) s += choose({"*", " / ", " * ", "/"}) + power(depth);
    return s;
  }
  std::string power(int depth) {
    std::string s = unary(depth);
    if (pick(4) == 0) {
      s += choose({"^", " ^ "});
      s += pick(6) != 0 ? std::string(choose({"2", "3", "-1", "-2"})) : power(depth - 1);
    }
    return s;
  }
  std::string unary(int depth) {
    switch (pick(6)) {
    case 0: return "-" + unary(depth);
    case 1: return "+" + unary(depth);
    default: return primary(depth);
    }
  }
  std::string primary(int depth) {
    int choice = depth <= 0 ? pick(3) : pick(6);
    switch (choice) {
    case 0: return choose({"2", "0.5", "3", "1.25", ".75", "1e-1", "2.5E0", "pi"});
    case 1:
    case 2: return choose({"x", "y", "z"});
    case 3:
    case 4: return "(" + expr(depth - 1) + ")";
    default:
      return std::string(choose({"sin", "cos", "exp", "abs", "sin", "cos", "sqrt", "asin"})) + "(" +
             expr(depth - 1) + ")";
    }
  }

  std::mt19937_64 rng_;
};

} // namespace

TEST(EvalExpr, SeparableKernel) {
  EXPECT_NEAR(ev("0.5*t1*s1", {{"t1", 0.4}, {"s1", 0.5}}), 0.1, 1e-17);
}

TEST(EvalExpr, SineOverTen) {
  const double expect = std::sin(std::numbers::pi / 2) / 10;
  EXPECT_EQ(ev("sin(u)/10", {{"u", std::numbers::pi / 2}}), expect);
  EXPECT_EQ(expect, 0.1);
}

TEST(EvalExpr, DivisionByZeroCarriesSpan) {
  auto e = Expression::parse("1/(t1-t1)");
  try {
    e.eval({{"t1", 0.3}});
    FAIL() << "expected EvalError";
  } catch (const EvalError& err) {
    EXPECT_EQ(std::string(err.what()).rfind("division by zero", 0), 0u);
    EXPECT_EQ(err.begin(), 0u);
    EXPECT_EQ(err.end(), 9u);
  }
}

TEST(EvalExpr, Precedence) {
  EXPECT_EQ(ev("1+2*3"), 7);
  EXPECT_EQ(ev("(1+2)*3"), 9);
  EXPECT_EQ(ev("8/4/2"), 1);
  EXPECT_EQ(ev("8-4-2"), 2);
  EXPECT_EQ(ev("2^3^2"), 512);
  EXPECT_EQ(ev("-2^2"), 4);
  EXPECT_EQ(ev("-(2^2)"), -4);
  EXPECT_EQ(ev("2^-1"), 0.5);
  EXPECT_EQ(ev("--3"), 3);
  EXPECT_EQ(ev("+3 - -3"), 6);
  EXPECT_EQ(ev("2*-3"), -6);
  EXPECT_EQ(ev("1e2 + .5"), 100.5);
  EXPECT_EQ(ev("pi"), std::numbers::pi);
  EXPECT_EQ(ev("abs(-2)*sqrt(16)+exp(0)+cos(0)+asin(1)*2/pi"), 11);
}

TEST(EvalExpr, DomainErrors) {
  EXPECT_THROW(ev("sqrt(-1)"), EvalError);
  EXPECT_THROW(ev("asin(1.5)"), EvalError);
  EXPECT_THROW(ev("asin(-1.0001)"), EvalError);
  EXPECT_THROW(ev("(-8)^(1/3)"), EvalError);
  EXPECT_THROW(ev("0^-1"), EvalError);
  EXPECT_EQ(ev("(-2)^3"), -8);
  EXPECT_EQ(ev("0^0"), 1);
}

TEST(EvalExpr, ErrorSpanPointsAtFailingCall) {
  auto e = Expression::parse("1 + sqrt(x - 2)");
  try {
    e.eval({{"x", 1.0}});
    FAIL();
  } catch (const EvalError& err) {
    EXPECT_EQ(e.text().substr(err.begin(), err.end() - err.begin()), "sqrt(x - 2)");
  }
}

TEST(EvalExpr, UnboundVariable) {
  try {
    ev("t1 + s2", {{"t1", 1.0}});
    FAIL();
  } catch (const UnboundVariable& e) {
    EXPECT_EQ(e.name(), "s2");
  }
  EXPECT_THROW(BoundExpression(Expression::parse("q"), {"x1"}), UnboundVariable);
}

TEST(EvalExpr, Deterministic) {
  auto e = Expression::parse("sin(x)^2 + cos(x)^2 - exp(-x)/3");
  for (double x = -3; x < 3; x += 0.37)
    EXPECT_EQ(std::bit_cast<std::uint64_t>(e.eval({{"x", x}})),
              std::bit_cast<std::uint64_t>(e.eval({{"x", x}})));
}

TEST(ParseExpression, VariablesInOrderOfAppearance) {
  auto e = Expression::parse("s1*t1 + s1 - u*pi");
  EXPECT_EQ(e.variables(), (std::vector<std::string>{"s1", "t1", "u"}));
}

TEST(ParseExpression, ErrorColumns) {
  struct Case {
    const char* text;
    std::size_t column;
  };
  for (auto [text, column] : {Case{"", 1}, Case{"1 +", 4}, Case{"(1+2", 5}, Case{"1 2", 3},
                              Case{"foo(1)", 1}, Case{"sin", 1}, Case{"2 $ 3", 3}, Case{"sin(1", 6}}) {
    try {
      Expression::parse(text);
      ADD_FAILURE() << "no error for '" << text << "'";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.column(), column) << text;
      EXPECT_EQ(e.line(), 0u);
    }
  }
}

TEST(ParseExpression, DeepNestingIsRejected) {
  std::string deep(500, '(');
  deep += "1" + std::string(500, ')');
  EXPECT_THROW(Expression::parse(deep), ParseError);
  std::string ok(50, '(');
  ok += "1" + std::string(50, ')');
  EXPECT_EQ(ev(ok), 1);
}

TEST(ParseExpression, StructuralEquality) {
  EXPECT_EQ(Expression::parse("1+x*2"), Expression::parse(" 1 + x * 2 "));
  EXPECT_EQ(Expression::parse("(x)"), Expression::parse("x"));
  EXPECT_NE(Expression::parse("1+x*2"), Expression::parse("(1+x)*2"));
  EXPECT_NE(Expression::parse("x"), Expression::parse("y"));
  EXPECT_EQ(Expression(), Expression());
  EXPECT_NE(Expression(), Expression::parse("1"));
}

TEST(Differential, AgreesWithShuntingYardOnRandomExpressions) {
  RandomExpr gen(2024);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-2, 2);
  int evaluated = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string text = gen.expr(2);
    const Bindings b{{"x", d(rng)}, {"y", d(rng)}, {"z", d(rng)}};
    const auto expect = ref::eval(text, b);
    const Expression e = Expression::parse(text);
    if (!expect) {
      EXPECT_THROW(e.eval(b), EvalError) << text;
      continue;
    }
    const double got = e.eval(b);
    ++evaluated;
    if (std::isnan(*expect)) {
      EXPECT_TRUE(std::isnan(got)) << text;
    } else {
      EXPECT_EQ(std::bit_cast<std::uint64_t>(got), std::bit_cast<std::uint64_t>(*expect))
          << text << " = " << *expect << " vs " << got;
    }
  }
  EXPECT_GT(evaluated, 500);
}
