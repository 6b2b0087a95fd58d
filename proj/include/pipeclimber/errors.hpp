#pragma once

#include <stdexcept>
#include <string>

namespace pipeclimber {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a documented precondition or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A key (e.g. an (nps, schedule) pair) is absent from an ingested table.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// An index or arc-length coordinate is outside its valid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A requested configuration cannot work physically (no static hold,
/// negative chord radicand, robot does not fit a bend, ...).
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::string message, int segment_index = -1)
      : Error(std::move(message)), segment_index_(segment_index) {}

  /// Index of the first offending segment, or -1 when not tied to one.
  int segment_index() const { return segment_index_; }

 private:
  int segment_index_;
};

/// Parse failure with a 1-based source position pointing at the first
/// offending character.
class SourceError : public Error {
 public:
  SourceError(int line, int column, std::string expected, std::string found)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": expected " + expected + ", found " +
              found),
        line_(line),
        column_(column),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  int line_;
  int column_;
  std::string expected_;
  std::string found_;
};

}  // namespace pipeclimber
