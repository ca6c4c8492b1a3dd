/**
 * @file eh_matrix.hpp
 *
 * n_p x r grid of variance histograms over pooled hidden features.
 */

#ifndef EHSTREAM_RNN_EH_MATRIX_HPP_
#define EHSTREAM_RNN_EH_MATRIX_HPP_

#include "ehstream/sketch/variance_eh.hpp"
#include "ehstream/window/summarizer.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehstream {

class EhMatrix
{
public:
  EhMatrix(std::size_t n_p, std::vector<std::int64_t> resolutions, StatSet stats, double eps)
    : n_p_(n_p)
    , resolutions_(std::move(resolutions))
    , stats_(stats)
    , eps_(eps)
  {
    if (n_p_ == 0)
      throw std::invalid_argument("EhMatrix needs at least one pooled feature");
    ResolutionConfig{ resolutions_, stats_, eps_, false }.validate();
    reset();
  }

  /// Adds each pooled value to its sketches, then returns the statistics
  /// feature-major, resolution-minor, mean before variance.
  Eigen::VectorXd eval(const Eigen::VectorXd& pooled)
  {
    if (static_cast<std::size_t>(pooled.size()) != n_p_)
      throw std::invalid_argument("EhMatrix: expected " + std::to_string(n_p_) + " pooled values, got " +
                                  std::to_string(pooled.size()));
    Eigen::VectorXd out(static_cast<Eigen::Index>(width()));
    Eigen::Index k = 0;
    const std::size_t r = resolutions_.size();
    for (std::size_t i = 0; i < n_p_; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        auto& s = sketches_[i * r + j];
        s.add(pooled[static_cast<Eigen::Index>(i)]);
        const auto e = s.estimate();
        if (stats_.mean)
          out[k++] = e.mean;
        if (stats_.variance)
          out[k++] = e.variance;
      }
    }
    return out;
  }

  void reset()
  {
    sketches_.clear();
    sketches_.reserve(n_p_ * resolutions_.size());
    for (std::size_t i = 0; i < n_p_; ++i)
      for (auto w : resolutions_)
        sketches_.emplace_back(eps_, w);
  }

  /// n_p * r * s.
  std::size_t width() const { return n_p_ * resolutions_.size() * stats_.size(); }
  std::size_t rows() const { return n_p_; }
  std::size_t cols() const { return resolutions_.size(); }
  const VarianceEH& sketch(std::size_t i, std::size_t j) const { return sketches_.at(i * resolutions_.size() + j); }

private:
  std::size_t n_p_;
  std::vector<std::int64_t> resolutions_;
  StatSet stats_;
  double eps_;
  std::vector<VarianceEH> sketches_;
};

} // namespace ehstream

#endif // EHSTREAM_RNN_EH_MATRIX_HPP_
