/**
 * @file bucket.hpp
 *
 * Bucket record and the level-queue storage shared by the power-of-two
 * histograms (bit count, integer sum).
 */

#ifndef EHSTREAM_SKETCH_BUCKET_HPP_
#define EHSTREAM_SKETCH_BUCKET_HPP_

#include "ehstream/sketch/window_estimate.hpp"

#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef EHSTREAM_CHECK_INVARIANTS
#include <cassert>
#define EHSTREAM_ASSERT_INVARIANTS(sketch) assert((sketch).invariants_hold())
#else
#define EHSTREAM_ASSERT_INVARIANTS(sketch) ((void)0)
#endif

namespace ehstream {

/// Summary of a contiguous chunk of the window.
struct Bucket
{
  Timestamp last_ts = 0;   // newest element summarized
  std::uint64_t count = 0; // n_i
  double sum = 0.0;        // s_i
  double var = 0.0;        // V_i, squared deviations from the bucket mean

  double mean() const { return count == 0 ? 0.0 : sum / static_cast<double>(count); }

  friend bool operator==(const Bucket&, const Bucket&) = default;
};

/// Minimum bucket multiplicities of the power-of-two histograms. Size-1
/// buckets keep between `unit` and `unit + 1` entries, every larger size
/// below the largest between `other` and `other + 1`.
struct LevelFloors
{
  std::uint64_t unit = 1;
  std::uint64_t other = 1;

  std::uint64_t at(std::size_t level) const { return level == 0 ? unit : other; }

  friend bool operator==(const LevelFloors&, const LevelFloors&) = default;
};

/// k = ceil(1/eps): k unit buckets, ceil(k/2) of every other size.
inline LevelFloors level_floors(double eps)
{
  const auto k = static_cast<std::uint64_t>(std::ceil(1.0 / eps - 1e-12));
  return LevelFloors{ k, (k + 1) / 2 };
}

namespace detail {

inline void check_sketch_params(double eps, std::int64_t window)
{
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("eps must lie in (0, 1), got " + std::to_string(eps));
  if (window < 1)
    throw std::invalid_argument("window must be >= 1, got " + std::to_string(window));
}

/// Buckets of size 2^i live in levels[i], oldest first. Every bucket in
/// level i+1 is older than every bucket in level i.
class PowerOfTwoLevels
{
public:
  std::vector<std::deque<Timestamp>> levels;

  bool empty() const
  {
    for (const auto& q : levels)
      if (!q.empty())
        return false;
    return true;
  }

  std::size_t bucket_count() const
  {
    std::size_t n = 0;
    for (const auto& q : levels)
      n += q.size();
    return n;
  }

  /// Index of the highest non-empty level, or -1.
  int top_level() const
  {
    for (int i = static_cast<int>(levels.size()) - 1; i >= 0; --i)
      if (!levels[static_cast<std::size_t>(i)].empty())
        return i;
    return -1;
  }

  std::uint64_t total() const
  {
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < levels.size(); ++i)
      t += static_cast<std::uint64_t>(levels[i].size()) << i;
    return t;
  }

  /// Drops every bucket whose newest element has left the window.
  void expire(Timestamp now, std::int64_t window)
  {
    const Timestamp cutoff = now - window;
    for (int top = top_level(); top >= 0; top = top_level()) {
      auto& q = levels[static_cast<std::size_t>(top)];
      if (q.front() > cutoff)
        return;
      q.pop_front();
    }
  }

  /// total - oldest/2, except that an oldest bucket of size 1 is exact.
  double estimate() const
  {
    const int top = top_level();
    if (top < 0)
      return 0.0;
    const double t = static_cast<double>(total());
    if (top == 0)
      return t;
    return t - std::ldexp(1.0, top - 1);
  }

  std::vector<Bucket> buckets() const
  {
    std::vector<Bucket> out;
    for (int i = static_cast<int>(levels.size()) - 1; i >= 0; --i) {
      const std::uint64_t size = std::uint64_t{ 1 } << i;
      for (Timestamp ts : levels[static_cast<std::size_t>(i)])
        out.push_back(Bucket{ ts, size, static_cast<double>(size), 0.0 });
    }
    return out;
  }

  /// Levels below the top hold [floor, floor + 1] buckets, the top holds
  /// [1, floor + 1], timestamps are non-decreasing from oldest to newest
  /// (strictly increasing when `strict`), nothing is expired.
  bool well_formed(const LevelFloors& floors, Timestamp now, std::int64_t window, bool strict) const
  {
    const int top = top_level();
    for (int i = 0; i <= top; ++i) {
      const auto n = levels[static_cast<std::size_t>(i)].size();
      const auto floor = floors.at(static_cast<std::size_t>(i));
      if (n > floor + 1)
        return false;
      if (i < top && n < floor)
        return false;
      if (i == top && n < 1)
        return false;
    }
    const auto all = buckets();
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i].last_ts <= now - window)
        return false;
      if (i > 0 && (strict ? all[i].last_ts <= all[i - 1].last_ts : all[i].last_ts < all[i - 1].last_ts))
        return false;
    }
    return true;
  }
};

} // namespace detail
} // namespace ehstream

#endif // EHSTREAM_SKETCH_BUCKET_HPP_
