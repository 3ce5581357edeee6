#pragma once

#include <compare>
#include <ostream>

#include "core/error.hpp"

namespace swipt {

// Transmit power that may be unbounded. An unreachable rate target is an
// explicit Infinite value, never a float sentinel.
class ExtendedPower {
 public:
  static ExtendedPower finite(double watts) {
    if (!(watts >= 0.0)) throw_invalid("ExtendedPower::finite requires a non-negative value");
    return ExtendedPower(false, watts);
  }
  static ExtendedPower infinite() { return ExtendedPower(true, 0.0); }

  bool is_finite() const noexcept { return !infinite_; }
  bool is_infinite() const noexcept { return infinite_; }

  double value() const {
    if (infinite_) throw Error(ErrorCode::kNumerical, "value() called on an infinite power");
    return watts_;
  }

  // True when this power is finite and does not exceed `limit`.
  bool within(double limit) const noexcept { return !infinite_ && watts_ <= limit; }

  friend bool operator==(const ExtendedPower& a, const ExtendedPower& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.watts_ == b.watts_);
  }
  friend std::partial_ordering operator<=>(const ExtendedPower& a, const ExtendedPower& b) noexcept {
    if (a.infinite_ || b.infinite_) {
      return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    return a.watts_ <=> b.watts_;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedPower& p) {
    if (p.infinite_) return os << "inf";
    return os << p.watts_;
  }

 private:
  ExtendedPower(bool infinite, double watts) : infinite_(infinite), watts_(watts) {}

  bool infinite_;
  double watts_;
};

}  // namespace swipt
