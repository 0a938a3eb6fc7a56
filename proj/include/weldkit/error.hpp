#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weldkit {

/// Malformed input: bad ranks, out-of-range indices, invariant violations in
/// user-supplied data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text that does not follow one of the file grammars.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : InputError("line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A move instance that does not match the diagram it is applied to.
class MoveError : public InputError {
 public:
  using InputError::InputError;
};

/// Replay of a trace failed at a given step (0-based).
class TraceError : public MoveError {
 public:
  TraceError(std::size_t step, const std::string& message)
      : MoveError("step " + std::to_string(step) + ": " + message), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// A postcondition the library checks on its own output failed. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Cooperative cancellation of a long computation.
class Cancelled : public std::runtime_error {
 public:
  Cancelled() : std::runtime_error("cancelled") {}
};

}  // namespace weldkit
