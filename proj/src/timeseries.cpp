#include "invlab/timeseries.hpp"

#include <cmath>

#include "invlab/error.hpp"

namespace invlab {

void TimeSeries::push(double t, double v) {
  if (!std::isfinite(t) || !std::isfinite(v))
    throw ValidationError("time series: non-finite sample");
  if (!t_.empty() && !(t > t_.back()))
    throw ValidationError("time series: times must be strictly increasing");
  t_.push_back(t);
  v_.push_back(v);
}

}  // namespace invlab
