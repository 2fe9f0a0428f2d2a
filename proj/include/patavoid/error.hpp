#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace patavoid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input (duplicate values, bad pattern text, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Text that failed to parse. Carries the offending token and its character offset
// within the original input.
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, std::string token, std::size_t position)
      : InvalidInput(what + " at position " + std::to_string(position) + ": '" + token + "'"),
        token_(std::move(token)),
        position_(position) {}

  const std::string& token() const noexcept { return token_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string token_;
  std::size_t position_;
};

// A search tree grew past its configured node budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t budget)
      : Error("node budget of " + std::to_string(budget) + " exceeded"), budget_(budget) {}

  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

}  // namespace patavoid
