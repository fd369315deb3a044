#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rrm {

/// Malformed or inconsistent input: parse failures, non-finite coordinates,
/// mismatched cloud sizes or dimensions, incomplete plans.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact assignment was requested on more points than the configured cap.
class CapExceededError : public std::runtime_error {
 public:
  CapExceededError(std::size_t size, std::size_t cap, const std::string& what)
      : std::runtime_error(what), size_(size), cap_(cap) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

}  // namespace rrm
