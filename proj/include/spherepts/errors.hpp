#pragma once

#include <stdexcept>
#include <string>

namespace spherepts {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation would exceed a configured size ceiling (enumeration range,
// pair budget, probe count).
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Input outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operation that needs at least one point received an empty set.
class EmptySetError : public Error {
 public:
  using Error::Error;
};

// Two points coincide where a strictly positive distance is required.
class CoincidentPoints : public Error {
 public:
  using Error::Error;
};

// close_pair_dim4 could not find a three-square decomposition.
class RepresentationError : public Error {
 public:
  using Error::Error;
};

}  // namespace spherepts
