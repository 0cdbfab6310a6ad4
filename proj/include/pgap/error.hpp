#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgap {

// Every library failure derives from pgap::error so callers (the CLI in
// particular) can map categories onto exit codes.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// Invalid argument to an operation (bad exponent list, unsupported order, ...).
class argument_error : public error {
 public:
  using error::error;
  const char* kind() const noexcept override { return "argument"; }
};

// Mathematical domain violated (q outside (0,1), x <= 2 for Li, ...).
class domain_error : public error {
 public:
  using error::error;
  const char* kind() const noexcept override { return "domain"; }
};

// The gap model is undefined for the given inputs (pi(x) >= x/2).
class model_domain_error : public domain_error {
 public:
  using domain_error::domain_error;
  const char* kind() const noexcept override { return "model-domain"; }
};

// A least-squares fit could not be set up (non-positive deficit, rank loss).
class fit_error : public domain_error {
 public:
  using domain_error::domain_error;
  const char* kind() const noexcept override { return "fit"; }
};

class resource_error : public error {
 public:
  using error::error;
  const char* kind() const noexcept override { return "resource"; }
};

class io_error : public error {
 public:
  using error::error;
  const char* kind() const noexcept override { return "io"; }
};

class parse_error : public io_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : io_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  const char* kind() const noexcept override { return "parse"; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class validation_error : public io_error {
 public:
  using io_error::io_error;
  const char* kind() const noexcept override { return "validation"; }
};

}  // namespace pgap
