#pragma once
#include <stdexcept>
#include <string>

namespace fpt {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input outside the mathematical domain of an operation.
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Evaluation exactly at a pole of the function.
struct PoleError : Error {
  explicit PoleError(const std::string& msg) : Error(msg) {}
};

// A numerical procedure failed to converge or produced an invalid value
// (e.g. a negative density); never silently clamped.
struct NumericError : Error {
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

// Evaluation of a time-dependent map past the time where it stays finite
// and increasing.
struct HorizonError : Error {
  explicit HorizonError(const std::string& msg) : Error(msg) {}
};

// A model specification violates its structural invariants.
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

}  // namespace fpt
