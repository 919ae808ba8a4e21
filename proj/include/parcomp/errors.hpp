#pragma once

#include <stdexcept>
#include <string>

namespace parcomp {

/// Malformed input files or automata that violate their structural contract.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or construction exceeded its configured resource cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The input is outside the domain of the requested construction.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace parcomp
