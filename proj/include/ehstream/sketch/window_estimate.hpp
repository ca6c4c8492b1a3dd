/**
 * @file window_estimate.hpp
 *
 * Result types shared by every sliding-window sketch, plus the exact
 * pairwise combination of (count, mean, squared-deviation) summaries.
 */

#ifndef EHSTREAM_SKETCH_WINDOW_ESTIMATE_HPP_
#define EHSTREAM_SKETCH_WINDOW_ESTIMATE_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace ehstream {

/// Logical stream index. The first element of a stream has timestamp 0.
using Timestamp = std::int64_t;

/// Answer of a window query.
///
/// `sq_dev` is the sum of squared deviations from the window mean; this is
/// the statistic the variance sketch approximates within relative eps.
/// `variance` is the population variance sq_dev / count.
struct WindowEstimate
{
  double count = 0.0;
  double sum = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  double sq_dev = 0.0;
};

/// Bucket and byte totals reported by memory_footprint().
struct Footprint
{
  std::size_t buckets = 0;
  std::size_t bytes = 0;

  friend bool operator==(const Footprint&, const Footprint&) = default;
};

/// Fixed per-bucket size used for byte reporting (index + three doubles + padding).
inline constexpr std::size_t kBucketBytes = 40;

inline Footprint footprint_of(std::size_t buckets)
{
  return Footprint{ buckets, buckets * kBucketBytes };
}

/// Sufficient statistics of a set of reals: count, mean and the sum of
/// squared deviations from that mean.
struct Moments
{
  double count = 0.0;
  double mean = 0.0;
  double sq_dev = 0.0;

  friend bool operator==(const Moments&, const Moments&) = default;
};

/// Exact merge of two disjoint summaries:
///   V = V_a + V_b + n_a n_b / (n_a + n_b) (mu_a - mu_b)^2
inline Moments combine(const Moments& a, const Moments& b)
{
  if (a.count <= 0.0)
    return b;
  if (b.count <= 0.0)
    return a;
  const double n = a.count + b.count;
  const double delta = b.mean - a.mean;
  Moments out;
  out.count = n;
  out.mean = a.mean + delta * (b.count / n);
  out.sq_dev = a.sq_dev + b.sq_dev + (a.count * b.count / n) * delta * delta;
  return out;
}

inline WindowEstimate to_estimate(const Moments& m)
{
  WindowEstimate e;
  if (m.count <= 0.0)
    return e;
  e.count = m.count;
  e.mean = m.mean;
  e.sum = m.mean * m.count;
  e.sq_dev = m.count <= 1.0 ? 0.0 : std::fmax(m.sq_dev, 0.0);
  e.variance = e.sq_dev / m.count;
  return e;
}

} // namespace ehstream

#endif // EHSTREAM_SKETCH_WINDOW_ESTIMATE_HPP_
