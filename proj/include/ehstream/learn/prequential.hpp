/**
 * @file prequential.hpp
 *
 * Test-then-train evaluation over a labeled stream.
 */

#ifndef EHSTREAM_LEARN_PREQUENTIAL_HPP_
#define EHSTREAM_LEARN_PREQUENTIAL_HPP_

#include "ehstream/data/record.hpp"

#include <concepts>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehstream {

template<typename M>
concept OnlineClassifier = requires(M m, const M cm, std::span<const double> x, int y) {
  { cm.predict(x) } -> std::convertible_to<int>;
  m.learn(x, y);
};

struct PrequentialResult
{
  std::uint64_t n = 0;
  std::uint64_t correct = 0;
  double accuracy = 0.0;
  /// Accuracy over the last `trace_window` predictions, one entry per record.
  std::vector<double> trace;
  std::vector<int> predictions;
};

struct PrequentialOptions
{
  std::size_t trace_window = 0; ///< 0 disables the sliding trace
  bool keep_predictions = false;
};

template<OnlineClassifier Model>
PrequentialResult prequential_eval(Model& model, const Dataset& data, const PrequentialOptions& opts = {})
{
  PrequentialResult res;
  std::deque<char> recent;
  std::uint64_t recent_hits = 0;
  if (opts.trace_window > 0)
    res.trace.reserve(data.size());
  for (const auto& r : data.records) {
    if (!r.label)
      throw std::invalid_argument("prequential_eval: unlabeled record at t=" + std::to_string(r.t));
    const int guess = model.predict(r.features);
    const bool hit = guess == *r.label;
    ++res.n;
    res.correct += hit;
    if (opts.keep_predictions)
      res.predictions.push_back(guess);
    if (opts.trace_window > 0) {
      recent.push_back(hit);
      recent_hits += hit;
      if (recent.size() > opts.trace_window) {
        recent_hits -= static_cast<std::uint64_t>(recent.front());
        recent.pop_front();
      }
      res.trace.push_back(static_cast<double>(recent_hits) / static_cast<double>(recent.size()));
    }
    model.learn(r.features, *r.label);
  }
  res.accuracy = res.n == 0 ? 0.0 : static_cast<double>(res.correct) / static_cast<double>(res.n);
  return res;
}

/// Machine-readable summary line.
inline std::string format_report(const PrequentialResult& r)
{
  char buf[96];
  std::snprintf(buf, sizeof buf, "n=%llu, accuracy=%.6f", static_cast<unsigned long long>(r.n), r.accuracy);
  return buf;
}

} // namespace ehstream

#endif // EHSTREAM_LEARN_PREQUENTIAL_HPP_
