#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace goh {

// Base of every error raised by the library. kind() is a stable
// machine-readable tag used by the CLI's JSON error reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual std::string_view kind() const noexcept { return "error"; }
};

class DimensionError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "dimension"; }
};

class RangeError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "range"; }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }
  std::string_view kind() const noexcept override { return "parse"; }

 private:
  std::size_t offset_;
};

class NonUnitError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "non_unit"; }
};

class IndependenceError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "not_independent"; }
};

class ConstraintViolation : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "constraint"; }
};

class StructuralError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "structural"; }
};

class SamplingError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "sampling"; }
};

class CertificateFailure : public Error {
 public:
  CertificateFailure(const std::string& what, std::string residual)
      : Error(what), residual_(std::move(residual)) {}
  const std::string& residual() const noexcept { return residual_; }
  std::string_view kind() const noexcept override { return "certificate"; }

 private:
  std::string residual_;
};

class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double last_valid_time)
      : Error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const noexcept { return last_valid_time_; }
  std::string_view kind() const noexcept override { return "blow_up"; }

 private:
  double last_valid_time_;
};

}  // namespace goh
