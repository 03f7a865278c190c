#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrd {

enum class ErrorCode {
  InvalidArgument,
  UnboundVariable,
  RelationViolated,
  BudgetExceeded,
  NotSpanning,
  NonPositiveGenerator,
  DegenerateLengths,
  StepBudgetExceeded,
  InvalidBandSystem,
  NotIsolated,
  PreconditionViolated,
  DegenerateOverlap,
  NotPositivelyExpressible,
  NoOverlap,
  UnboundLabel,
  TwistBreaksSolution,
  NotSeparable,
  InvalidGraph,
  SyntaxError,
};

const char* to_string(ErrorCode code);

/// Base of every error thrown by the library. `code()` names the failure kind
/// so that callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::string name)
      : Error(ErrorCode::UnboundVariable, "unbound variable: " + name),
        name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class RelationViolated : public Error {
 public:
  explicit RelationViolated(std::size_t index)
      : Error(ErrorCode::RelationViolated,
              "relation " + std::to_string(index) + " does not map to the identity"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NotSeparable : public Error {
 public:
  explicit NotSeparable(std::size_t equation)
      : Error(ErrorCode::NotSeparable,
              "no marker placement solves equation " + std::to_string(equation)),
        equation_(equation) {}
  std::size_t equation() const noexcept { return equation_; }

 private:
  std::size_t equation_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& expected)
      : Error(ErrorCode::SyntaxError, std::to_string(line) + ":" + std::to_string(column) +
                                          ": expected " + expected),
        line_(line),
        column_(column),
        expected_(expected) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

}  // namespace mrd
