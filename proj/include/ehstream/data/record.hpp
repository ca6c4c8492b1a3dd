/**
 * @file record.hpp
 *
 * Stream records and an in-memory labeled dataset.
 */

#ifndef EHSTREAM_DATA_RECORD_HPP_
#define EHSTREAM_DATA_RECORD_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ehstream {

/// One timestamped feature vector. `label` indexes Dataset::class_names.
struct StreamRecord
{
  std::int64_t t = 0;
  std::vector<double> features;
  std::optional<int> label;

  friend bool operator==(const StreamRecord&, const StreamRecord&) = default;
};

/// A finite stream held in memory. Every record has feature_names.size()
/// features; labels, when present, index class_names.
struct Dataset
{
  std::string relation = "stream";
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;
  std::vector<StreamRecord> records;

  std::size_t feature_count() const { return feature_names.size(); }
  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
  bool labeled() const { return !class_names.empty(); }

  /// Index of `name` in class_names, appending it when first seen.
  int intern_class(const std::string& name)
  {
    auto it = std::find(class_names.begin(), class_names.end(), name);
    if (it != class_names.end())
      return static_cast<int>(it - class_names.begin());
    class_names.push_back(name);
    return static_cast<int>(class_names.size()) - 1;
  }

  /// Throws if any record disagrees with the declared layout.
  void validate() const
  {
    for (const auto& r : records) {
      if (r.features.size() != feature_names.size())
        throw std::invalid_argument("record " + std::to_string(r.t) + " has " +
                                    std::to_string(r.features.size()) + " features, expected " +
                                    std::to_string(feature_names.size()));
      if (r.label && (*r.label < 0 || static_cast<std::size_t>(*r.label) >= class_names.size()))
        throw std::invalid_argument("record " + std::to_string(r.t) + " has an undeclared label");
    }
  }

  /// Records [begin, end) as a new dataset sharing the schema.
  Dataset slice(std::size_t begin, std::size_t end) const
  {
    Dataset out;
    out.relation = relation;
    out.feature_names = feature_names;
    out.class_names = class_names;
    end = std::min(end, records.size());
    begin = std::min(begin, end);
    out.records.assign(records.begin() + static_cast<std::ptrdiff_t>(begin),
                       records.begin() + static_cast<std::ptrdiff_t>(end));
    return out;
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Splits off the most recent `fraction` of records, order preserved.
inline std::pair<Dataset, Dataset> split_tail(const Dataset& data, double fraction)
{
  if (!(fraction > 0.0) || !(fraction < 1.0))
    throw std::invalid_argument("split fraction must lie in (0, 1)");
  const auto n = data.size();
  const auto tail = static_cast<std::size_t>(std::llround(static_cast<double>(n) * fraction));
  return { data.slice(0, n - tail), data.slice(n - tail, n) };
}

} // namespace ehstream

#endif // EHSTREAM_DATA_RECORD_HPP_
