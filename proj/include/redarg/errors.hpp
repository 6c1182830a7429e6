#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace redarg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class WellFormednessError : public Error {
 public:
  using Error::Error;
};

class PositionOutOfRange : public Error {
 public:
  using Error::Error;
};

class SortMismatch : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

/// A sort needed a designated ground constant but has no ground constructor term.
class NoGroundConstant : public Error {
 public:
  explicit NoGroundConstant(const std::string& sort)
      : Error("sort " + sort + " has no ground constructor term"), sort_(sort) {}
  const std::string& sort() const { return sort_; }

 private:
  std::string sort_;
};

class NotAConstructorSystem : public Error {
 public:
  using Error::Error;
};

/// A detection method was invoked on a TRS that fails one of its gates.
class PreconditionUnmet : public Error {
 public:
  explicit PreconditionUnmet(const std::string& gate, const std::string& detail = {})
      : Error("precondition unmet: " + gate + (detail.empty() ? "" : " (" + detail + ")")),
        gate_(gate) {}
  const std::string& gate() const { return gate_; }

 private:
  std::string gate_;
};

class EmptySort : public Error {
 public:
  using Error::Error;
};

}  // namespace redarg
