#pragma once

#include <stdexcept>
#include <string>

namespace widecount {

/// A finite enumeration or search exceeded its configured budget.
class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Supplied action data violates the (groupoid) action axioms.
class NotAnAction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pair's count vector lies outside the calibrated region.
class NotCalibrated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Groupoid extraction or the calibrated counting disagreed across scales.
class Unstable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace widecount
