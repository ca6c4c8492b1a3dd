/**
 * @file pooling.hpp
 *
 * Non-overlapping average pooling of a hidden vector.
 */

#ifndef EHSTREAM_RNN_POOLING_HPP_
#define EHSTREAM_RNN_POOLING_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace ehstream {

/// floor(sqrt(h)), at least 1.
inline std::size_t default_pool_kernel(std::size_t h)
{
  std::size_t k = static_cast<std::size_t>(std::sqrt(static_cast<double>(h)));
  while (k * k > h)
    --k;
  while ((k + 1) * (k + 1) <= h)
    ++k;
  return k == 0 ? 1 : k;
}

inline std::size_t pooled_size(std::size_t h, std::size_t kernel)
{
  if (kernel == 0)
    throw std::invalid_argument("pool kernel must be >= 1");
  return h / kernel;
}

/// Averages consecutive blocks of `kernel` entries; the trailing remainder
/// is dropped.
inline Eigen::VectorXd avg_pool(const Eigen::VectorXd& h, std::size_t kernel)
{
  const auto np = pooled_size(static_cast<std::size_t>(h.size()), kernel);
  const auto k = static_cast<Eigen::Index>(kernel);
  Eigen::VectorXd out(static_cast<Eigen::Index>(np));
  for (Eigen::Index i = 0; i < out.size(); ++i)
    out[i] = h.segment(i * k, k).mean();
  return out;
}

} // namespace ehstream

#endif // EHSTREAM_RNN_POOLING_HPP_
