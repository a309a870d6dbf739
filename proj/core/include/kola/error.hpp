#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kola {

/// Input outside the domain of an operation (letter not in the alphabet,
/// empty pattern, non-smooth word where a smooth one is required, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The operation has no meaning for the alphabet's parity class.
class UnsupportedParity : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A resource cap (nodes, seconds, live items, memory estimate) was hit
/// before the computation finished. `progress` carries whatever partial
/// count the operation had accumulated.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::uint64_t progress)
      : std::runtime_error(what), progress_(progress) {}

  std::uint64_t progress() const noexcept { return progress_; }

 private:
  std::uint64_t progress_;
};

}  // namespace kola
