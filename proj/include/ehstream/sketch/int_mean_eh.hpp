/**
 * @file int_mean_eh.hpp
 *
 * Window mean of non-negative integers from a sum histogram and a count
 * histogram that receives one 1 per element.
 */

#ifndef EHSTREAM_SKETCH_INT_MEAN_EH_HPP_
#define EHSTREAM_SKETCH_INT_MEAN_EH_HPP_

#include "ehstream/sketch/bit_count_eh.hpp"
#include "ehstream/sketch/int_sum_eh.hpp"

#include <cstdint>

namespace ehstream {

class IntMeanEH
{
public:
  IntMeanEH(double eps, std::int64_t window)
    : sum_(eps, window)
    , count_(eps, window)
  {}

  void add(std::int64_t value)
  {
    sum_.add(value);
    count_.add(true);
  }

  /// sum and count are the two sub-estimates; mean is their quotient, or 0
  /// when the count estimate is 0.
  WindowEstimate estimate() const
  {
    WindowEstimate e;
    e.sum = sum_.sum_estimate();
    e.count = count_.count_estimate();
    e.mean = e.count > 0.0 ? e.sum / e.count : 0.0;
    return e;
  }

  double mean_estimate() const { return estimate().mean; }

  Footprint memory_footprint() const
  {
    return footprint_of(sum_.memory_footprint().buckets + count_.memory_footprint().buckets);
  }

  const IntSumEH& sum_sketch() const { return sum_; }
  const BitCountEH& count_sketch() const { return count_; }

  bool invariants_hold() const
  {
    return sum_.invariants_hold() && count_.invariants_hold() && sum_.size() == count_.size();
  }

  double eps() const { return sum_.eps(); }
  std::int64_t window() const { return sum_.window(); }
  std::int64_t size() const { return sum_.size(); }

private:
  IntSumEH sum_;
  BitCountEH count_;
};

} // namespace ehstream

#endif // EHSTREAM_SKETCH_INT_MEAN_EH_HPP_
