#include "ehstream/rnn/elman.hpp"
#include "ehstream/rnn/pooling.hpp"

#include "rnn_oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

using namespace ehstream;

namespace {

RnnConfig vanilla(std::size_t n, std::size_t h, std::size_t m)
{
  RnnConfig c;
  c.arch = Arch::Vanilla;
  c.input = n;
  c.hidden = h;
  c.output = m;
  return c;
}

} // namespace

TEST(ElmanStep, ZeroWeightsGiveUniformOutput)
{
  const auto p = ElmanParams::zeros(vanilla(3, 5, 4));
  const auto s = elman_step(p, Eigen::VectorXd::Ones(3), Eigen::VectorXd::Zero(5));
  EXPECT_EQ(s.h, Eigen::VectorXd::Zero(5));
  for (Eigen::Index i = 0; i < 4; ++i)
    EXPECT_DOUBLE_EQ(s.y[i], 0.25);
}

TEST(ElmanStep, ScalarCase)
{
  auto p = ElmanParams::zeros(vanilla(1, 1, 2));
  p.W_h(0, 0) = 1.0;
  const auto s = elman_step(p, Eigen::VectorXd::Constant(1, 0.5), Eigen::VectorXd::Zero(1));
  EXPECT_DOUBLE_EQ(s.h[0], std::tanh(0.5));
}

TEST(ElmanStep, MatchesLoopEvaluation)
{
  const auto c = vanilla(3, 4, 3);
  const auto p = ElmanParams::init(c, 21);
  const auto inst = oracle::small_instance(c, 10, 2);
  Eigen::VectorXd h = inst.h0;
  oracle::Vec hn = oracle::to_vec(inst.h0);
  for (const auto& x : inst.xs) {
    const auto s = elman_step(p, x, h);
    const auto r = oracle::naive_step(p, oracle::to_vec(x), hn, {});
    for (std::size_t i = 0; i < 4; ++i)
      ASSERT_NEAR(s.h[static_cast<Eigen::Index>(i)], r.h[i], 1e-14);
    for (std::size_t i = 0; i < 3; ++i)
      ASSERT_NEAR(s.y[static_cast<Eigen::Index>(i)], r.y[i], 1e-14);
    h = s.h;
    hn = r.h;
  }
}

TEST(ElmanStep, SoftmaxSumsToOne)
{
  const auto c = vanilla(2, 8, 5);
  auto p = ElmanParams::init(c, 3);
  p.W_y *= 50.0;
  const auto inst = oracle::small_instance(c, 200, 4);
  Eigen::VectorXd h = inst.h0;
  for (const auto& x : inst.xs) {
    const auto s = elman_step(p, x, h);
    ASSERT_NEAR(s.y.sum(), 1.0, 1e-12);
    ASSERT_TRUE((s.y.array() >= 0.0).all());
    h = s.h;
  }
}

TEST(ElmanStep, DimensionMismatch)
{
  const auto p = ElmanParams::zeros(vanilla(2, 3, 2));
  EXPECT_THROW(elman_step(p, Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3)), std::invalid_argument);
  EXPECT_THROW(elman_step(p, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(4)), std::invalid_argument);
}

TEST(Softmax, StableForLargeLogits)
{
  Eigen::VectorXd o(3);
  o << 1000.0, 1000.0, -1000.0;
  const auto y = softmax(o);
  EXPECT_NEAR(y[0], 0.5, 1e-15);
  EXPECT_NEAR(y[2], 0.0, 1e-15);
  EXPECT_EQ(argmax(y), 0);
}

TEST(Pooling, Rules)
{
  EXPECT_EQ(default_pool_kernel(32), 5u);
  EXPECT_EQ(pooled_size(32, 5), 6u);
  EXPECT_EQ(default_pool_kernel(16), 4u);
  EXPECT_EQ(default_pool_kernel(1), 1u);
  Eigen::VectorXd h(4);
  h << 1, 2, 3, 4;
  Eigen::VectorXd expect(2);
  expect << 1.5, 3.5;
  EXPECT_EQ(avg_pool(h, 2), expect);
  EXPECT_EQ(avg_pool(h, 1), h);
  EXPECT_EQ(avg_pool(h, 3).size(), 1);
  EXPECT_DOUBLE_EQ(avg_pool(h, 3)[0], 2.0);
  EXPECT_THROW(avg_pool(h, 0), std::invalid_argument);
}

TEST(Pooling, MatchesLoops)
{
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  for (std::size_t h = 1; h < 40; ++h) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(h));
    for (auto& x : v)
      x = g(rng);
    for (std::size_t k = 1; k <= h; ++k) {
      const auto a = avg_pool(v, k);
      const auto b = oracle::naive_pool(oracle::to_vec(v), k);
      ASSERT_EQ(static_cast<std::size_t>(a.size()), b.size());
      for (std::size_t i = 0; i < b.size(); ++i)
        ASSERT_NEAR(a[static_cast<Eigen::Index>(i)], b[i], 1e-14);
    }
  }
}

TEST(ElmanGradient, MatchesFiniteDifferences)
{
  const auto c = vanilla(2, 4, 2);
  for (std::uint64_t seed : { 1u, 2u, 3u }) {
    const auto model = RnnModel::create(c, seed);
    const auto inst = oracle::small_instance(c, 20, seed + 100);
    const auto r = oracle::gradient_check(model, inst.xs, inst.ys, inst.h0);
    EXPECT_EQ(r.checked, model.param_count());
    EXPECT_LT(r.max_rel_error, 1e-4) << "seed " << seed;
  }
}

TEST(ElmanModel, ParamCounts)
{
  const auto m = RnnModel::create(vanilla(6, 32, 2), 1);
  EXPECT_EQ(m.param_count(), 32u * 6 + 32 * 32 + 32 + 2 * 32 + 2);
  EXPECT_EQ(m.output_param_count(), 2u * 32 + 2);
}

TEST(ElmanModel, InitIsSeededAndBounded)
{
  const auto c = vanilla(3, 16, 2);
  const auto a = ElmanParams::init(c, 5), b = ElmanParams::init(c, 5), d = ElmanParams::init(c, 6);
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == d);
  a.visit([](const char*, const auto& m) { EXPECT_LE(m.cwiseAbs().maxCoeff(), 0.25); });
}
