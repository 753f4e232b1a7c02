#pragma once

#include <stdexcept>
#include <string>

namespace wbalg {

// Raised when a request exceeds the dense desk-scale limits.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a matrix unit is requested that does not exist
// (zero multiplicity, zero B eigenvalue, ...).
class unit_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised by the singular-basis reduction when a discarded direction is
// numerically nonzero, i.e. the spanned algebra is not semisimple.
class semisimplicity_error : public std::runtime_error {
 public:
  semisimplicity_error(const std::string& what, double norm)
      : std::runtime_error(what), norm_(norm) {}
  double norm() const noexcept { return norm_; }

 private:
  double norm_;
};

}  // namespace wbalg
