#include "ehstream/data/sine_mixed.hpp"
#include "ehstream/learn/gaussian_nb.hpp"
#include "ehstream/learn/prequential.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

using namespace ehstream;

namespace {

Dataset constant_classes(int n)
{
  Dataset d;
  d.feature_names = { "x" };
  d.class_names = { "a", "b" };
  for (int t = 0; t < n; ++t)
    d.records.push_back({ t, { t % 2 ? 5.0 : -5.0 }, t % 2 });
  return d;
}

/// Remembers calls so the test-then-train order can be checked.
struct Recorder
{
  mutable std::vector<std::string> log;
  int predict(std::span<const double> x) const
  {
    log.push_back("p" + std::to_string(static_cast<int>(x[0])));
    return 0;
  }
  void learn(std::span<const double> x, int)
  {
    log.push_back("l" + std::to_string(static_cast<int>(x[0])));
  }
};

} // namespace

TEST(Prequential, SeparableStreamMissesOnlyColdStart)
{
  GaussianNB nb(1);
  const auto r = prequential_eval(nb, constant_classes(100));
  EXPECT_EQ(r.n, 100u);
  // t=0 predicts 0 (correct), t=1 only class 0 known (miss), afterwards perfect
  EXPECT_EQ(r.correct, 99u);
  EXPECT_DOUBLE_EQ(r.accuracy, 0.99);
  EXPECT_EQ(format_report(r), "n=100, accuracy=0.990000");
}

TEST(Prequential, TestThenTrainOrder)
{
  Dataset d;
  d.feature_names = { "x" };
  d.class_names = { "a" };
  d.records = { { 0, { 1.0 }, 0 }, { 1, { 2.0 }, 0 } };
  Recorder rec;
  prequential_eval(rec, d);
  EXPECT_EQ(rec.log, (std::vector<std::string>{ "p1", "l1", "p2", "l2" }));
}

TEST(Prequential, SlidingTrace)
{
  GaussianNB nb(1);
  PrequentialOptions opts;
  opts.trace_window = 4;
  opts.keep_predictions = true;
  const auto r = prequential_eval(nb, constant_classes(10), opts);
  ASSERT_EQ(r.trace.size(), 10u);
  EXPECT_DOUBLE_EQ(r.trace[0], 1.0);
  EXPECT_DOUBLE_EQ(r.trace[1], 0.5);
  EXPECT_DOUBLE_EQ(r.trace[4], 0.75);
  EXPECT_DOUBLE_EQ(r.trace[5], 1.0);
  EXPECT_EQ(r.predictions[1], 0);
}

TEST(Prequential, Deterministic)
{
  SineConceptSpec spec;
  spec.n = 2000;
  DriftSpec drift;
  drift.kind = DriftKind::Incremental;
  const auto d = gen_sine_mixed(spec, drift);
  GaussianNB a(1), b(1);
  PrequentialOptions opts;
  opts.keep_predictions = true;
  EXPECT_EQ(prequential_eval(a, d, opts).predictions, prequential_eval(b, d, opts).predictions);
}

TEST(Prequential, RejectsUnlabeled)
{
  Dataset d;
  d.feature_names = { "x" };
  d.records = { { 0, { 1.0 }, std::nullopt } };
  GaussianNB nb(1);
  EXPECT_THROW(prequential_eval(nb, d), std::invalid_argument);
}
