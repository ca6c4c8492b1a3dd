/**
 * @file summarizer.hpp
 *
 * Multi-resolution windowed features: every attribute is tracked by one
 * variance histogram per window length, and each pushed record is extended
 * with the windowed mean and/or variance at every resolution.
 */

#ifndef EHSTREAM_WINDOW_SUMMARIZER_HPP_
#define EHSTREAM_WINDOW_SUMMARIZER_HPP_

#include "ehstream/data/record.hpp"
#include "ehstream/sketch/variance_eh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ehstream {

/// Windowed statistics a summarizer can emit. Output order is always mean
/// before variance.
struct StatSet
{
  bool mean = true;
  bool variance = true;

  std::size_t size() const { return static_cast<std::size_t>(mean) + static_cast<std::size_t>(variance); }
  bool empty() const { return size() == 0; }

  /// Parses a comma list of "mean" and "var"/"variance".
  static StatSet parse(std::string_view text)
  {
    StatSet s{ false, false };
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = std::min(text.find(',', pos), text.size());
      const auto item = text.substr(pos, comma - pos);
      if (item == "mean")
        s.mean = true;
      else if (item == "var" || item == "variance")
        s.variance = true;
      else if (!item.empty())
        throw std::invalid_argument("unknown statistic '" + std::string(item) + "'");
      pos = comma + 1;
    }
    if (s.empty())
      throw std::invalid_argument("at least one statistic is required");
    return s;
  }

  std::string to_string() const
  {
    if (mean && variance)
      return "mean,var";
    return mean ? "mean" : (variance ? "var" : "");
  }

  friend bool operator==(const StatSet&, const StatSet&) = default;
};

struct ResolutionConfig
{
  std::vector<std::int64_t> resolutions;
  StatSet stats;
  double eps = 0.05;
  bool include_raw = true;

  void validate() const
  {
    if (resolutions.empty())
      throw std::invalid_argument("at least one resolution is required");
    for (std::size_t i = 0; i < resolutions.size(); ++i) {
      if (resolutions[i] < 1)
        throw std::invalid_argument("resolutions must be positive");
      if (i > 0 && resolutions[i] <= resolutions[i - 1])
        throw std::invalid_argument("resolutions must be strictly ascending");
    }
    if (stats.empty())
      throw std::invalid_argument("at least one statistic is required");
    if (!(eps > 0.0) || !(eps < 1.0))
      throw std::invalid_argument("eps must lie in (0, 1)");
  }

  /// Width of the augmented feature vector for `p` input attributes.
  std::size_t output_width(std::size_t p) const
  {
    return (include_raw ? p : 0) + p * resolutions.size() * stats.size();
  }
};

/// Parses "10,50,100" into window lengths; sorts and rejects duplicates.
inline std::vector<std::int64_t> parse_resolutions(std::string_view text)
{
  std::vector<std::int64_t> out;
  std::string item;
  std::istringstream in{ std::string(text) };
  while (std::getline(in, item, ',')) {
    if (item.empty())
      continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad resolution '" + item + "'");
    }
    if (used != item.size() || v < 1)
      throw std::invalid_argument("bad resolution '" + item + "'");
    out.push_back(v);
  }
  if (out.empty())
    throw std::invalid_argument("at least one resolution is required");
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw std::invalid_argument("duplicate resolution");
  return out;
}

class Summarizer
{
public:
  Summarizer(std::size_t p, ResolutionConfig config)
    : p_(p)
    , config_(std::move(config))
  {
    if (p_ == 0)
      throw std::invalid_argument("Summarizer needs at least one attribute");
    config_.validate();
    reset();
  }

  /// Feeds one record and returns it with the windowed features appended
  /// (attribute-major, resolution-minor, mean before variance).
  StreamRecord push(const StreamRecord& rec)
  {
    if (rec.features.size() != p_)
      throw std::invalid_argument("Summarizer: expected " + std::to_string(p_) + " features, got " +
                                  std::to_string(rec.features.size()));
    for (double x : rec.features)
      if (!std::isfinite(x))
        throw std::invalid_argument("Summarizer: non-finite feature at t=" + std::to_string(rec.t));

    StreamRecord out;
    out.t = rec.t;
    out.label = rec.label;
    out.features.reserve(config_.output_width(p_));
    if (config_.include_raw)
      out.features = rec.features;

    const std::size_t r = config_.resolutions.size();
    for (std::size_t j = 0; j < p_; ++j) {
      for (std::size_t i = 0; i < r; ++i) {
        auto& sketch = sketches_[j * r + i];
        sketch.add(rec.features[j]);
        const auto e = sketch.estimate();
        if (config_.stats.mean)
          out.features.push_back(e.mean);
        if (config_.stats.variance)
          out.features.push_back(e.variance);
      }
    }
    return out;
  }

  /// Column names of the pushed output given the input attribute names.
  std::vector<std::string> output_names(const std::vector<std::string>& input_names) const
  {
    if (input_names.size() != p_)
      throw std::invalid_argument("Summarizer: attribute name count mismatch");
    std::vector<std::string> names;
    if (config_.include_raw)
      names = input_names;
    for (std::size_t j = 0; j < p_; ++j) {
      for (auto w : config_.resolutions) {
        const std::string stem = "a" + std::to_string(j) + "_w" + std::to_string(w);
        if (config_.stats.mean)
          names.push_back(stem + "_mean");
        if (config_.stats.variance)
          names.push_back(stem + "_var");
      }
    }
    return names;
  }

  void reset()
  {
    sketches_.clear();
    sketches_.reserve(p_ * config_.resolutions.size());
    for (std::size_t j = 0; j < p_; ++j)
      for (auto w : config_.resolutions)
        sketches_.emplace_back(config_.eps, w);
  }

  std::size_t attribute_count() const { return p_; }
  std::size_t sketch_count() const { return sketches_.size(); }
  std::size_t output_width() const { return config_.output_width(p_); }
  const ResolutionConfig& config() const { return config_; }

  /// Sketch tracking attribute j at resolutions[i].
  const VarianceEH& sketch(std::size_t j, std::size_t i) const
  {
    return sketches_.at(j * config_.resolutions.size() + i);
  }

  Footprint memory_footprint() const
  {
    std::size_t b = 0;
    for (const auto& s : sketches_)
      b += s.memory_footprint().buckets;
    return footprint_of(b);
  }

private:
  std::size_t p_;
  ResolutionConfig config_;
  std::vector<VarianceEH> sketches_;
};

/// Runs a whole dataset through a fresh summarizer.
inline Dataset summarize(const Dataset& data, const ResolutionConfig& config)
{
  Summarizer s(data.feature_count(), config);
  Dataset out;
  out.relation = data.relation;
  out.class_names = data.class_names;
  out.feature_names = s.output_names(data.feature_names);
  out.records.reserve(data.size());
  for (const auto& r : data.records)
    out.records.push_back(s.push(r));
  return out;
}

} // namespace ehstream

#endif // EHSTREAM_WINDOW_SUMMARIZER_HPP_
