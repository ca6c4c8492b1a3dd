#include "ehstream/learn/gaussian_nb.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

using ehstream::GaussianNB;

namespace {

void learn(GaussianNB& nb, std::vector<double> x, int y)
{
  nb.learn(x, y);
}

int predict(const GaussianNB& nb, std::vector<double> x)
{
  return nb.predict(x);
}

} // namespace

TEST(GaussianNB, ColdStartPredictsZero)
{
  GaussianNB nb(2);
  EXPECT_EQ(predict(nb, { 1.0, 2.0 }), 0);
  GaussianNB sized(1, 3);
  EXPECT_EQ(predict(sized, { 5.0 }), 0);
}

TEST(GaussianNB, WellSeparated)
{
  GaussianNB nb(1);
  for (double x : { -11.0, -10.0, -9.0 })
    learn(nb, { x }, 0);
  for (double x : { 9.0, 10.0, 11.0 })
    learn(nb, { x }, 1);
  EXPECT_EQ(predict(nb, { 9.0 }), 1);
  EXPECT_EQ(predict(nb, { -9.0 }), 0);
}

TEST(GaussianNB, SymmetricTieGoesToLowerIndex)
{
  GaussianNB nb(1);
  for (double x : { -11.0, -9.0 })
    learn(nb, { x }, 1);
  for (double x : { 9.0, 11.0 })
    learn(nb, { x }, 0);
  EXPECT_EQ(predict(nb, { 0.0 }), 0);
}

TEST(GaussianNB, UnseenClassesAreNotCandidates)
{
  GaussianNB nb(1);
  learn(nb, { 3.0 }, 2);
  EXPECT_EQ(nb.class_count(), 3u);
  EXPECT_EQ(predict(nb, { -100.0 }), 2);
}

TEST(GaussianNB, HandComputedLogPosterior)
{
  GaussianNB nb(2);
  // class 0: (1,2), (3,6) -> mean (2,4), var (1,4)
  learn(nb, { 1.0, 2.0 }, 0);
  learn(nb, { 3.0, 6.0 }, 0);
  // class 1: (0,0), (2,0), (4,0) -> mean (2,0), var (8/3, 0 -> floor)
  learn(nb, { 0.0, 0.0 }, 1);
  learn(nb, { 2.0, 0.0 }, 1);
  learn(nb, { 4.0, 0.0 }, 1);

  const std::vector<double> x{ 2.5, 1e-3 };
  auto lg = [](double x, double mu, double var) {
    return -0.5 * std::log(2 * std::numbers::pi * var) - (x - mu) * (x - mu) / (2 * var);
  };
  const double s0 = std::log(2.0 / 5.0) + lg(2.5, 2.0, 1.0) + lg(1e-3, 4.0, 4.0);
  const double s1 = std::log(3.0 / 5.0) + lg(2.5, 2.0, 8.0 / 3.0) + lg(1e-3, 0.0, 1e-6);
  EXPECT_NEAR(nb.log_joint(0, x), s0, 1e-12);
  EXPECT_NEAR(nb.log_joint(1, x), s1, 1e-9);
  EXPECT_EQ(predict(nb, x), s1 > s0 ? 1 : 0);
  EXPECT_NEAR(nb.prior(0) + nb.prior(1), 1.0, 1e-15);
}

TEST(GaussianNB, FirstExampleAndIdenticalBatch)
{
  GaussianNB nb(3);
  learn(nb, { 1.0, -2.0, 0.5 }, 1);
  for (std::size_t j = 0; j < 3; ++j)
    EXPECT_EQ(nb.raw_variance(1, j), 0.0);
  EXPECT_EQ(nb.mean(1, 1), -2.0);
  for (int i = 0; i < 99; ++i)
    learn(nb, { 1.0, -2.0, 0.5 }, 1);
  EXPECT_EQ(nb.mean(1, 0), 1.0);
  EXPECT_EQ(nb.raw_variance(1, 2), 0.0);
  EXPECT_EQ(nb.variance(1, 2), GaussianNB::kVarianceFloor);
}

TEST(GaussianNB, RunningMomentsMatchTwoPass)
{
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(100.0, 7.0);
  GaussianNB nb(1);
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) {
    xs.push_back(g(rng));
    learn(nb, { xs.back() }, 0);
  }
  const auto [mu, var] = oracle::two_pass(xs);
  EXPECT_NEAR(nb.mean(0, 0), mu, 1e-9 * std::abs(mu));
  EXPECT_NEAR(nb.raw_variance(0, 0), var, 1e-9 * var);
}

TEST(GaussianNB, ScaleInvariantPredictions)
{
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  GaussianNB a(2), b(2);
  std::vector<int> seen(2, 0);
  for (int i = 0; i < 2000; ++i) {
    const int y = static_cast<int>(rng() % 2);
    const std::vector<double> x{ g(rng) + y, 2.0 * g(rng) - y };
    const std::vector<double> x10{ 10 * x[0], 10 * x[1] };
    if (seen[0] >= 2 && seen[1] >= 2) {
      ASSERT_EQ(a.predict(x), b.predict(x10)) << "i=" << i;
    }
    a.learn(x, y);
    b.learn(x10, y);
    ++seen[static_cast<std::size_t>(y)];
  }
}

TEST(GaussianNB, Errors)
{
  EXPECT_THROW(GaussianNB(0), std::invalid_argument);
  GaussianNB nb(2);
  EXPECT_THROW(predict(nb, { 1.0 }), std::invalid_argument);
  EXPECT_THROW(learn(nb, { 1.0, 2.0 }, -1), std::invalid_argument);
}
