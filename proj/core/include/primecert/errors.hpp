#pragma once

#include <stdexcept>
#include <string>

namespace primecert {

// Raised when a computation would exceed a configured resource cap
// (series length, scan size, allocation). Never raised for math reasons.
class budget_error : public std::runtime_error {
public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when stored data contradicts a recomputation (digest mismatch,
// certificate field inconsistent with its own config).
class integrity_error : public std::runtime_error {
public:
  explicit integrity_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when certificate JSON cannot be parsed into the schema at all
// (bad JSON, unknown version, missing or extra or mistyped field).
class malformed_certificate : public std::runtime_error {
public:
  explicit malformed_certificate(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace primecert
