#pragma once

#include <stdexcept>
#include <string>

namespace sched {

// Malformed input document. field() names the offending JSON path.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// A schedule or instance that refers to ids that do not exist, or violates a
// type invariant. Distinct from a feasibility violation.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A table, LP, or enumeration would exceed its configured cap.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The instance admits no solution for the requested bounds.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An invariant that the algorithm guarantees was found broken.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sched
