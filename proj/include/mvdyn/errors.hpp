#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvdyn {

// Precondition or domain violation (bad input value, arity, incompatible method).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource guard was hit.
class CapExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public DomainError {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& msg)
      : DomainError(msg), offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Internal consistency failure; indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mvdyn
