#pragma once

#include <cmath>

namespace confbessel {

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays
/// accurate when an addend is larger in magnitude than the running sum,
/// which happens routinely in alternating series before the terms peak.
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(double initial) : sum_(initial) {}

  void add(double value) noexcept {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) noexcept {
    add(value);
    return *this;
  }

  [[nodiscard]] double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace confbessel
