#pragma once

#include <stdexcept>
#include <string>

namespace ergm {

// Every failure the library reports derives from Error so callers (the CLI in
// particular) can map any of them onto a nonzero exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfRangeError : public Error { using Error::Error; };
class DimensionError : public Error { using Error::Error; };
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};
class ValidationError : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };
class UnknownNodeError : public Error { using Error::Error; };
class UnknownAttributeError : public Error { using Error::Error; };
class InvalidDyadError : public Error { using Error::Error; };
class UndefinedMetricError : public Error { using Error::Error; };
class NumericalError : public Error { using Error::Error; };
class EmptyDesignError : public Error { using Error::Error; };
class RankDeficiencyError : public Error { using Error::Error; };
class InsufficientPeriodsError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };

}  // namespace ergm
