#pragma once

#include <cmath>
#include <span>

#include "minkprobe/vector.hpp"

namespace minkprobe {

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedVecSum {
 public:
  void add(const Vec& v) {
    x_.add(v.x());
    y_.add(v.y());
    z_.add(v.z());
  }
  Vec value() const { return Vec(x_.value(), y_.value(), z_.value()); }

 private:
  CompensatedSum x_, y_, z_;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

}  // namespace minkprobe
