#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mixmono {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class DegenerateAxisError : public Error {
 public:
  using Error::Error;
};

class InvalidBoundsError : public Error {
 public:
  using Error::Error;
};

// Raised when a Jacobian entry has no finite bound on either side, i.e. the
// enclosure is (-inf, inf). Row and column are 0-based.
class UnboundedDerivativeError : public Error {
 public:
  UnboundedDerivativeError(std::size_t row, std::size_t col)
      : Error("unbounded derivative d f" + std::to_string(row + 1) + " / d x" +
              std::to_string(col + 1)),
        row_(row),
        col_(col) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

class BlowupError : public Error {
 public:
  explicit BlowupError(double time)
      : Error("state exceeded magnitude cap at t = " + std::to_string(time)), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mixmono
