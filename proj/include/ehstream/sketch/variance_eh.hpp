/**
 * @file variance_eh.hpp
 *
 * Exponential Histogram for the mean and variance of the last W reals.
 *
 * Each bucket keeps (last_ts, n, mu, V) where V is the sum of squared
 * deviations from mu. Every bucket B_i other than the newest satisfies
 *
 *     9 V_i <= eps^2 V_{i*}
 *
 * where V_{i*} is the exact combined V of all buckets newer than B_i. The
 * window estimate combines the newer buckets exactly and adds the live part
 * of the oldest bucket as a pseudo-bucket with the oldest bucket's mean and
 * half its V. Since every element counts, the live part's size is known
 * exactly: elements in window minus the elements of the newer buckets.
 */

#ifndef EHSTREAM_SKETCH_VARIANCE_EH_HPP_
#define EHSTREAM_SKETCH_VARIANCE_EH_HPP_

#include "ehstream/sketch/bucket.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ehstream {

/// Bucket of the variance histogram.
struct MomentBucket
{
  Timestamp last_ts = 0;
  Moments stats;
};

/// Window estimate from buckets (oldest first) when `in_window` elements are
/// live. `newer` must be the exact combination of buckets[1..].
inline WindowEstimate estimate_from_buckets(std::span<const MomentBucket> buckets,
                                            const Moments& newer,
                                            std::int64_t in_window)
{
  if (buckets.empty())
    return {};
  const Moments& oldest = buckets.front().stats;
  const double live = static_cast<double>(in_window) - newer.count;
  Moments pseudo;
  if (live >= oldest.count) {
    pseudo = oldest;
  } else {
    pseudo.count = std::max(live, 1.0);
    pseudo.mean = oldest.mean;
    pseudo.sq_dev = oldest.sq_dev / 2.0;
  }
  return to_estimate(combine(pseudo, newer));
}

class VarianceEH
{
public:
  VarianceEH(double eps, std::int64_t window)
    : eps_(eps)
    , window_(window)
  {
    detail::check_sketch_params(eps, window);
  }

  void add(double value)
  {
    if (!std::isfinite(value))
      throw std::invalid_argument("VarianceEH: non-finite input");
    const Timestamp now = next_++;
    buckets_.push_back(MomentBucket{ now, Moments{ 1.0, value, 0.0 } });

    const Timestamp cutoff = now - window_;
    auto first_live = std::find_if(buckets_.begin(), buckets_.end(),
                                   [cutoff](const MomentBucket& b) { return b.last_ts > cutoff; });
    buckets_.erase(buckets_.begin(), first_live);

    merge_pass();
    EHSTREAM_ASSERT_INVARIANTS(*this);
  }

  WindowEstimate estimate() const
  {
    return estimate_from_buckets(buckets_, newer_, elements_in_window());
  }

  Footprint memory_footprint() const { return footprint_of(buckets_.size()); }

  std::span<const MomentBucket> moment_buckets() const { return buckets_; }

  /// Live buckets, oldest first, in the generic Bucket layout.
  std::vector<Bucket> buckets() const
  {
    std::vector<Bucket> out;
    out.reserve(buckets_.size());
    for (const auto& b : buckets_)
      out.push_back(Bucket{ b.last_ts,
                            static_cast<std::uint64_t>(b.stats.count),
                            b.stats.mean * b.stats.count,
                            b.stats.sq_dev });
    return out;
  }

  bool invariants_hold() const
  {
    const Timestamp now = next_ - 1;
    Moments suffix;
    for (std::size_t i = buckets_.size(); i-- > 0;) {
      const auto& b = buckets_[i];
      if (b.last_ts <= now - window_ || b.stats.count < 1.0 || b.stats.sq_dev < 0.0)
        return false;
      if (b.stats.count == 1.0 && b.stats.sq_dev != 0.0)
        return false;
      if (i + 1 < buckets_.size()) {
        if (b.last_ts >= buckets_[i + 1].last_ts)
          return false;
        if (9.0 * b.stats.sq_dev > eps_ * eps_ * suffix.sq_dev * (1.0 + 1e-9) + 1e-300)
          return false;
      }
      suffix = combine(b.stats, suffix);
    }
    return true;
  }

  double eps() const { return eps_; }
  std::int64_t window() const { return window_; }
  std::int64_t size() const { return next_; }
  std::int64_t elements_in_window() const { return std::min<std::int64_t>(next_, window_); }

private:
  // Greedy oldest-to-newest pass: extend the current group with the next
  // bucket whenever the merged group still satisfies the invariant against
  // the buckets newer than it. Suffix statistics do not change under merges
  // of older buckets, so they are computed once.
  void merge_pass()
  {
    const std::size_t m = buckets_.size();
    suffix_.resize(m);
    Moments acc;
    for (std::size_t i = m; i-- > 0;) {
      suffix_[i] = acc;
      acc = combine(buckets_[i].stats, acc);
    }

    const double bound = eps_ * eps_;
    scratch_.clear();
    MomentBucket group = buckets_[0];
    for (std::size_t j = 1; j < m; ++j) {
      const Moments merged = combine(group.stats, buckets_[j].stats);
      if (9.0 * merged.sq_dev <= bound * suffix_[j].sq_dev) {
        group.stats = merged;
        group.last_ts = buckets_[j].last_ts;
      } else {
        scratch_.push_back(group);
        group = buckets_[j];
      }
    }
    scratch_.push_back(group);
    buckets_.swap(scratch_);

    newer_ = Moments{};
    for (std::size_t i = buckets_.size(); i-- > 1;)
      newer_ = combine(buckets_[i].stats, newer_);
  }

  double eps_;
  std::int64_t window_;
  Timestamp next_ = 0;
  std::vector<MomentBucket> buckets_;
  Moments newer_;
  std::vector<Moments> suffix_;
  std::vector<MomentBucket> scratch_;
};

} // namespace ehstream

#endif // EHSTREAM_SKETCH_VARIANCE_EH_HPP_
