#pragma once

#include <stdexcept>
#include <string>

namespace bricard {

// bad vertex/edge ids, degenerate triangles, points at infinity
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

struct NoSeedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

// malformed input files
struct SchemaError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace bricard
