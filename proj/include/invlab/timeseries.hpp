#pragma once

#include <cstddef>
#include <vector>

namespace invlab {

/// (t, v) samples with strictly increasing t and finite v.
class TimeSeries {
 public:
  TimeSeries() = default;

  /// Throws ValidationError if t does not exceed the last time or v is not finite.
  void push(double t, double v);

  std::size_t size() const { return t_.size(); }
  bool empty() const { return t_.empty(); }
  double t(std::size_t i) const { return t_[i]; }
  double v(std::size_t i) const { return v_[i]; }
  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& values() const { return v_; }

 private:
  std::vector<double> t_;
  std::vector<double> v_;
};

}  // namespace invlab
