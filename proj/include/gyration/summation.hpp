#pragma once

#include <cmath>

namespace gyration {

/// Neumaier compensated sum. Order of add() calls is the reduction order.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.compensation_);
  }
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Welford running mean and variance; exact zero variance for identical inputs.
class RunningStats {
 public:
  void add(double x) noexcept {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }
  long long count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance (n - 1 denominator); 0 for fewer than two samples.
  double variance() const noexcept { return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1); }
  double standard_error() const noexcept {
    return count_ < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
  }

 private:
  long long count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace gyration
