#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gclrip {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, std::string message,
              std::vector<std::string> expected = {});

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string detail_;
  std::vector<std::string> expected_;
};

class EvalError : public Error {
 public:
  enum class Kind {
    unbound_variable,
    index_out_of_bounds,
    division_by_zero,
    marker_not_ground,
    non_integral_index,
  };

  EvalError(Kind kind, std::string message)
      : Error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class DomainTooLarge : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class MutationError : public Error {
 public:
  enum class Kind {
    no_difference,
    multiple_differences,
    shape_mismatch,
    signature_mismatch,
  };

  MutationError(Kind kind, std::string message)
      : Error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class MissingAnnotation : public Error {
 public:
  using Error::Error;
};

class NondeterministicChoice : public Error {
 public:
  using Error::Error;
};

}  // namespace gclrip
