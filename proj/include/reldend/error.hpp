#pragma once

#include <stdexcept>
#include <string>

namespace reldend {

/// Input that does not parse or does not satisfy its schema
/// (out-of-range table entries, zero cocycle values, bad tree text, ...).
class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A well-formed request that violates an operation's contract: a suite that
/// needs a commutative index run over a non-commutative one, a missing
/// operation role, an index outside a finite window, and so on.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace reldend
