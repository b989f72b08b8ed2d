#pragma once

#include <stdexcept>
#include <string>

namespace kickchain {

// Argument errors use std::invalid_argument directly. The types below cover
// the remaining failure classes callers may want to tell apart.

/// Operation is defined only for a subset of dispersion models or schedules.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A documented size cap (dense matrix, transform length, ensemble size) was exceeded.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(std::string cap_name, const std::string& what)
      : std::runtime_error(what), cap_(std::move(cap_name)) {}

  const std::string& cap() const noexcept { return cap_; }

 private:
  std::string cap_;
};

/// Not enough usable samples for a fit.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kickchain
