#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace natt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (rep files, words, corpora).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An edge word whose consecutive edges do not share endpoints, or a circuit
/// word that is not closed.
class NotComposable : public Error {
 public:
  using Error::Error;
};

/// A closed word that reduces to the trivial conjugacy class.
class TrivialClass : public Error {
 public:
  using Error::Error;
};

class ContractibleComponent : public Error {
 public:
  using Error::Error;
};

/// An iteration produced a word longer than the caller's length budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t k_reached, std::size_t length)
      : Error("length budget exceeded at iterate " + std::to_string(k_reached) +
              " (length " + std::to_string(length) + ")"),
        k_reached_(k_reached),
        length_(length) {}

  std::size_t k_reached() const { return k_reached_; }
  std::size_t length() const { return length_; }

 private:
  std::size_t k_reached_;
  std::size_t length_;
};

/// Input data that contradicts a structural guarantee the algorithms rely on
/// (two inequivalent indivisible Nielsen paths, a non-immersion, a bad
/// dictionary, an invalid representative).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Neither decision procedure resolved a query within its bounds.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

}  // namespace natt
