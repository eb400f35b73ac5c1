#ifndef PICARDO_ERRORS_HPP
#define PICARDO_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace picardo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Two points (or a point and a space) do not live on the same domain.
class MismatchedDomain : public Error {
public:
  using Error::Error;
};

class NonFinite : public Error {
public:
  using Error::Error;
};

/// An operator threw while being evaluated. `sample()` carries a description
/// of the input that triggered it when one is available.
class OperatorFailure : public Error {
public:
  explicit OperatorFailure(const std::string& what, std::string sample = {})
      : Error(sample.empty() ? what : what + " [sample: " + sample + "]"),
        sample_(std::move(sample)) {}

  const std::string& sample() const noexcept { return sample_; }

private:
  std::string sample_;
};

class ArityMismatch : public Error {
public:
  using Error::Error;
};

/// A Geraghty function left [0,1) at a sampled argument.
class OutOfRange : public Error {
public:
  OutOfRange(double t, double value)
      : Error("beta(" + std::to_string(t) + ") = " + std::to_string(value) +
              " is outside [0,1)"),
        t_(t), value_(value) {}

  double t() const noexcept { return t_; }
  double value() const noexcept { return value_; }

private:
  double t_;
  double value_;
};

class Diverged : public Error {
public:
  using Error::Error;
};

class InsufficientTrace : public Error {
public:
  using Error::Error;
};

/// A sampled hypothesis of an integral-equation existence theorem failed.
class HypothesisViolated : public Error {
public:
  HypothesisViolated(std::string condition, double worst)
      : Error("hypothesis " + condition + " violated (worst value " +
              std::to_string(worst) + ")"),
        condition_(std::move(condition)), worst_(worst) {}

  const std::string& condition() const noexcept { return condition_; }
  double worst() const noexcept { return worst_; }

private:
  std::string condition_;
  double worst_;
};

class SingularSystem : public Error {
public:
  SingularSystem(const std::string& what, double rcond)
      : Error(what + " (reciprocal condition estimate " + std::to_string(rcond) + ")"),
        rcond_(rcond) {}

  double rcond() const noexcept { return rcond_; }

private:
  double rcond_;
};

class CapExceeded : public Error {
public:
  using Error::Error;
};

/// Malformed input text. Line and column are 1-based; line 0 means the text
/// was a single expression with no enclosing file.
class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(locate(line, column) + message), message_(message), line_(line), column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

protected:
  static std::string locate(std::size_t line, std::size_t column) {
    if (line == 0) return "column " + std::to_string(column) + ": ";
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
  }

private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that fails a semantic check (unknown key, missing
/// parameter, illegal variable).
class ValidationError : public ParseError {
public:
  using ParseError::ParseError;
};

class UnboundVariable : public Error {
public:
  explicit UnboundVariable(std::string name)
      : Error("unbound variable '" + name + "'"), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

/// Evaluation left the domain of an operation. `begin`/`end` are byte
/// offsets of the offending subexpression.
class EvalError : public Error {
public:
  EvalError(const std::string& message, std::size_t begin, std::size_t end)
      : Error(message + " at columns " + std::to_string(begin + 1) + "-" + std::to_string(end)),
        begin_(begin), end_(end) {}

  std::size_t begin() const noexcept { return begin_; }
  std::size_t end() const noexcept { return end_; }

private:
  std::size_t begin_;
  std::size_t end_;
};

} // namespace picardo

#endif // PICARDO_ERRORS_HPP
