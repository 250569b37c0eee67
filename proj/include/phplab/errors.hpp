#ifndef PHPLAB_ERRORS_HPP
#define PHPLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace phplab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments outside the domain of a counting function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A construction was requested outside the finite regime where it is valid.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

class InvalidConditionError : public Error {
 public:
  using Error::Error;
};

class InvalidTreeError : public Error {
 public:
  using Error::Error;
};

class AmbientMismatchError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace phplab

#endif  // PHPLAB_ERRORS_HPP
