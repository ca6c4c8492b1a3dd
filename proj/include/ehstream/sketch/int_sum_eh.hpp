/**
 * @file int_sum_eh.hpp
 *
 * Exponential Histogram for the sum of the last W non-negative integers.
 *
 * Each value v is treated as v conceptual 1s sharing one timestamp. Rather
 * than cascading v single insertions, the bucket layout after an insertion
 * is read off the canonical representation of the new live total, and
 * timestamps are assigned by pairing the oldest buckets of each size, which
 * reproduces the cascading result exactly in O(levels * l) time.
 */

#ifndef EHSTREAM_SKETCH_INT_SUM_EH_HPP_
#define EHSTREAM_SKETCH_INT_SUM_EH_HPP_

#include "ehstream/sketch/bucket.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ehstream {

/// Bucket multiplicities per power-of-two size of the canonical
/// representation of `total`: every size below the largest holds between
/// its floor and floor + 1 buckets, the largest between 1 and floor + 1.
/// Index i is size 2^i. The representation is unique for each total.
inline std::vector<std::uint64_t> canonical_counts(std::uint64_t total, const LevelFloors& floors)
{
  if (floors.unit == 0 || floors.other == 0)
    throw std::invalid_argument("canonical_counts: floors must be >= 1");
  std::vector<std::uint64_t> counts;
  if (total == 0)
    return counts;
  if (total <= floors.unit + 1) {
    counts.push_back(total);
    return counts;
  }
  // Minimal content of the sizes below 2^j plus one bucket of size 2^j.
  auto smallest_with_top = [&](unsigned j) {
    return floors.unit + floors.other * ((std::uint64_t{ 1 } << j) - 2) + (std::uint64_t{ 1 } << j);
  };
  unsigned j = 1;
  while (j + 1 < 63 && smallest_with_top(j + 1) <= total)
    ++j;
  const std::uint64_t base = floors.unit + floors.other * ((std::uint64_t{ 1 } << j) - 2);
  const std::uint64_t rest = total - base;
  for (unsigned i = 0; i < j; ++i)
    counts.push_back(floors.at(i) + ((rest >> i) & 1u));
  counts.push_back(rest >> j);
  return counts;
}

class IntSumEH
{
public:
  IntSumEH(double eps, std::int64_t window)
    : eps_(eps)
    , window_(window)
  {
    detail::check_sketch_params(eps, window);
    floors_ = ehstream::level_floors(eps);
  }

  void add(std::int64_t value)
  {
    if (value < 0)
      throw std::invalid_argument("IntSumEH accepts non-negative integers only");
    const Timestamp now = next_++;
    if (value > 0)
      insert(now, static_cast<std::uint64_t>(value));
    levels_.expire(now, window_);
    EHSTREAM_ASSERT_INVARIANTS(*this);
  }

  double sum_estimate() const { return levels_.estimate(); }

  /// sum carries the estimate; count is the exact number of elements in the
  /// window and mean is their ratio.
  WindowEstimate estimate() const
  {
    WindowEstimate e;
    e.sum = sum_estimate();
    e.count = static_cast<double>(elements_in_window());
    e.mean = e.count == 0.0 ? 0.0 : e.sum / e.count;
    return e;
  }

  Footprint memory_footprint() const { return footprint_of(levels_.bucket_count()); }
  std::vector<Bucket> buckets() const { return levels_.buckets(); }

  /// Live 1s currently held in buckets (before the half-oldest correction).
  std::uint64_t live_total() const { return levels_.total(); }

  bool invariants_hold() const
  {
    if (!levels_.well_formed(floors_, next_ - 1, window_, false))
      return false;
    const auto expect = canonical_counts(levels_.total(), floors_);
    const auto top = levels_.top_level();
    if (static_cast<int>(expect.size()) != top + 1)
      return false;
    for (std::size_t i = 0; i < expect.size(); ++i)
      if (levels_.levels[i].size() != expect[i])
        return false;
    return true;
  }

  double eps() const { return eps_; }
  std::int64_t window() const { return window_; }
  const LevelFloors& level_floors() const { return floors_; }
  std::int64_t size() const { return next_; }
  std::int64_t elements_in_window() const { return std::min<std::int64_t>(next_, window_); }

private:
  void insert(Timestamp now, std::uint64_t value)
  {
    auto& levels = levels_.levels;
    const auto target = canonical_counts(levels_.total() + value, floors_);
    if (levels.size() < target.size())
      levels.resize(target.size());

    // Buckets entering level i: explicit older timestamps, then `run` copies of now.
    std::vector<Timestamp> carried;
    std::uint64_t run = value;
    for (std::size_t i = 0; i < target.size(); ++i) {
      auto& q = levels[i];
      const std::uint64_t held = q.size() + carried.size();
      const std::uint64_t combined = held + run;
      const std::uint64_t keep = target[i];
      if (combined < keep || (combined - keep) % 2 != 0)
        throw std::logic_error("IntSumEH: canonical layout unreachable");
      const std::uint64_t merges = (combined - keep) / 2;

      auto at = [&](std::uint64_t idx) -> Timestamp {
        if (idx < q.size())
          return q[idx];
        if (idx < held)
          return carried[idx - q.size()];
        return now;
      };

      // Pair p merges positions 2p and 2p + 1 and keeps the newer timestamp.
      std::vector<Timestamp> next_carried;
      std::uint64_t next_run = 0;
      for (std::uint64_t p = 0; p < merges; ++p) {
        const std::uint64_t newer = 2 * p + 1;
        if (newer < held)
          next_carried.push_back(at(newer));
        else {
          next_run = merges - p;
          break;
        }
      }

      std::deque<Timestamp> kept;
      for (std::uint64_t idx = 2 * merges; idx < combined; ++idx)
        kept.push_back(at(idx));
      q = std::move(kept);
      carried = std::move(next_carried);
      run = next_run;
    }
    if (!carried.empty() || run != 0)
      throw std::logic_error("IntSumEH: carry past the canonical top level");
  }

  double eps_;
  std::int64_t window_;
  LevelFloors floors_;
  Timestamp next_ = 0;
  detail::PowerOfTwoLevels levels_;
};

} // namespace ehstream

#endif // EHSTREAM_SKETCH_INT_SUM_EH_HPP_
