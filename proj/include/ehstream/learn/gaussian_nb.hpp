/**
 * @file gaussian_nb.hpp
 *
 * Incremental Gaussian Naive Bayes with per-class Welford updates.
 */

#ifndef EHSTREAM_LEARN_GAUSSIAN_NB_HPP_
#define EHSTREAM_LEARN_GAUSSIAN_NB_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehstream {

class GaussianNB
{
public:
  static constexpr double kVarianceFloor = 1e-6;

  explicit GaussianNB(std::size_t p, std::size_t n_classes = 0)
    : p_(p)
  {
    if (p_ == 0)
      throw std::invalid_argument("GaussianNB needs at least one feature");
    grow(n_classes);
  }

  /// Most probable class among those seen so far; ties go to the lowest
  /// index. Returns 0 before any example has been learned.
  int predict(std::span<const double> x) const
  {
    check(x);
    int best = 0;
    double best_score = -INFINITY;
    for (std::size_t c = 0; c < counts_.size(); ++c) {
      if (counts_[c] == 0)
        continue;
      const double s = log_joint(c, x);
      if (s > best_score) {
        best_score = s;
        best = static_cast<int>(c);
      }
    }
    return best;
  }

  void learn(std::span<const double> x, int label)
  {
    check(x);
    if (label < 0)
      throw std::invalid_argument("GaussianNB: negative label");
    const auto c = static_cast<std::size_t>(label);
    if (c >= counts_.size())
      grow(c + 1);
    const double n = static_cast<double>(++counts_[c]);
    ++total_;
    double* mu = &mean_[c * p_];
    double* m2 = &m2_[c * p_];
    for (std::size_t j = 0; j < p_; ++j) {
      const double d = x[j] - mu[j];
      mu[j] += d / n;
      m2[j] += d * (x[j] - mu[j]);
    }
  }

  /// log P(c) + sum_j log N(x_j; mu_cj, max(var_cj, floor)).
  double log_joint(std::size_t c, std::span<const double> x) const
  {
    const double n = static_cast<double>(counts_.at(c));
    double s = std::log(n / static_cast<double>(total_));
    for (std::size_t j = 0; j < p_; ++j) {
      const double var = variance(c, j);
      const double d = x[j] - mean_[c * p_ + j];
      s += -0.5 * std::log(2.0 * std::numbers::pi * var) - d * d / (2.0 * var);
    }
    return s;
  }

  std::size_t feature_count() const { return p_; }
  std::size_t class_count() const { return counts_.size(); }
  std::uint64_t class_examples(std::size_t c) const { return counts_.at(c); }
  std::uint64_t examples() const { return total_; }
  double mean(std::size_t c, std::size_t j) const { return mean_.at(c * p_ + j); }

  /// Population variance of feature j in class c before flooring.
  double raw_variance(std::size_t c, std::size_t j) const
  {
    const auto n = counts_.at(c);
    return n == 0 ? 0.0 : m2_[c * p_ + j] / static_cast<double>(n);
  }

  double variance(std::size_t c, std::size_t j) const { return std::fmax(raw_variance(c, j), kVarianceFloor); }

  double prior(std::size_t c) const
  {
    return total_ == 0 ? 0.0 : static_cast<double>(counts_.at(c)) / static_cast<double>(total_);
  }

  void reset()
  {
    const auto k = counts_.size();
    counts_.clear();
    mean_.clear();
    m2_.clear();
    total_ = 0;
    grow(k);
  }

private:
  void check(std::span<const double> x) const
  {
    if (x.size() != p_)
      throw std::invalid_argument("GaussianNB: expected " + std::to_string(p_) + " features, got " +
                                  std::to_string(x.size()));
  }

  void grow(std::size_t k)
  {
    counts_.resize(k, 0);
    mean_.resize(k * p_, 0.0);
    m2_.resize(k * p_, 0.0);
  }

  std::size_t p_;
  std::vector<std::uint64_t> counts_;
  std::vector<double> mean_;
  std::vector<double> m2_;
  std::uint64_t total_ = 0;
};

} // namespace ehstream

#endif // EHSTREAM_LEARN_GAUSSIAN_NB_HPP_
