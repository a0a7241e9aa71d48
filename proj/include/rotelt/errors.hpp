#pragma once

#include <stdexcept>
#include <string>

namespace rotelt {

enum class SpecErrorKind { Syntax, UnknownIdentifier, Invariant };

/// Input does not describe a valid graph, labeling or map.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& what, int line = 0, int column = 0,
            SpecErrorKind kind = SpecErrorKind::Invariant)
      : std::runtime_error(what), line_(line), column_(column), kind_(kind) {}

  int line() const { return line_; }
  int column() const { return column_; }
  SpecErrorKind kind() const { return kind_; }

 private:
  int line_;
  int column_;
  SpecErrorKind kind_;
};

/// A precondition of an analysis (not of the input format) does not hold.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iteration would exceed the configured path-length cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rotelt
