#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kissbound {

// Argument outside the mathematical domain of an operation (rho <= 1,
// non-positive radius, angle outside the cap-radius interval, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Three cap radii that do not span a proper spherical triangle.
class DegenerateTriangleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed input documents (packings, certificates, checkpoints).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverlapError : public std::runtime_error {
 public:
  OverlapError(std::size_t first, std::size_t second, double penetration);

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }
  double penetration() const noexcept { return penetration_; }

 private:
  std::size_t first_;
  std::size_t second_;
  double penetration_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kissbound
