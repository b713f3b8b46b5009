#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace discrarr {

/// A seeded search ran out of attempts. Distinct from a proof of impossibility.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input; `offset` is the byte position of the offending character.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : std::invalid_argument("byte " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace discrarr
