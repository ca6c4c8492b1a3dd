/**
 * @file bit_count_eh.hpp
 *
 * Exponential Histogram counting the 1s among the last W bits of a stream.
 */

#ifndef EHSTREAM_SKETCH_BIT_COUNT_EH_HPP_
#define EHSTREAM_SKETCH_BIT_COUNT_EH_HPP_

#include "ehstream/sketch/bucket.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace ehstream {

/// Relative eps-approximate count of 1s in a sliding window of W bits.
///
/// Bucket sizes are powers of two, k = ceil(1 / eps). Size 1 keeps between
/// k and k + 1 buckets and every larger size below the largest between
/// l and l + 1, l = ceil(k / 2); one bucket past the limit merges the two
/// oldest of that size.
class BitCountEH
{
public:
  BitCountEH(double eps, std::int64_t window)
    : eps_(eps)
    , window_(window)
  {
    detail::check_sketch_params(eps, window);
    k_ = static_cast<std::uint64_t>(std::ceil(1.0 / eps - 1e-12));
    floors_ = ehstream::level_floors(eps);
  }

  void add(bool bit)
  {
    const Timestamp now = next_++;
    if (bit)
      insert_one(now);
    levels_.expire(now, window_);
    EHSTREAM_ASSERT_INVARIANTS(*this);
  }

  /// Estimated number of 1s in the window (fractional).
  double count_estimate() const { return levels_.estimate(); }

  /// count_estimate() rounded half-up.
  std::int64_t rounded_count() const
  {
    return static_cast<std::int64_t>(std::floor(count_estimate() + 0.5));
  }

  /// count and sum carry the 1s estimate; mean is that estimate over the
  /// number of elements currently in the window.
  WindowEstimate estimate() const
  {
    WindowEstimate e;
    e.count = count_estimate();
    e.sum = e.count;
    const auto elems = elements_in_window();
    e.mean = elems == 0 ? 0.0 : e.count / static_cast<double>(elems);
    return e;
  }

  Footprint memory_footprint() const { return footprint_of(levels_.bucket_count()); }

  /// Live buckets, oldest first.
  std::vector<Bucket> buckets() const { return levels_.buckets(); }

  bool invariants_hold() const { return levels_.well_formed(floors_, next_ - 1, window_, true); }

  double eps() const { return eps_; }
  std::int64_t window() const { return window_; }
  std::uint64_t k() const { return k_; }
  /// Minimum number of buckets per size (except the largest).
  const LevelFloors& level_floors() const { return floors_; }
  /// Number of elements added so far.
  std::int64_t size() const { return next_; }
  std::int64_t elements_in_window() const { return std::min<std::int64_t>(next_, window_); }

private:
  void insert_one(Timestamp now)
  {
    auto& levels = levels_.levels;
    if (levels.empty())
      levels.emplace_back();
    levels[0].push_back(now);
    for (std::size_t i = 0; i < levels.size() && levels[i].size() > floors_.at(i) + 1; ++i) {
      levels[i].pop_front();
      const Timestamp newer = levels[i].front();
      levels[i].pop_front();
      if (i + 1 == levels.size())
        levels.emplace_back();
      levels[i + 1].push_back(newer);
    }
  }

  double eps_;
  std::int64_t window_;
  std::uint64_t k_ = 0;
  LevelFloors floors_;
  Timestamp next_ = 0;
  detail::PowerOfTwoLevels levels_;
};

} // namespace ehstream

#endif // EHSTREAM_SKETCH_BIT_COUNT_EH_HPP_
