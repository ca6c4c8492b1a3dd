/**
 * @file electricity.hpp
 *
 * Loader for the normalized Electricity market stream (columns date, day,
 * period, nswprice, nswdemand, vicprice, vicdemand, transfer, class).
 */

#ifndef EHSTREAM_DATA_ELECTRICITY_HPP_
#define EHSTREAM_DATA_ELECTRICITY_HPP_

#include "ehstream/data/arff.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ehstream {

inline constexpr std::size_t kElectricityRecords = 45312;

/// Columns kept by default; everything else in the file is dropped.
inline std::vector<std::string> electricity_default_columns()
{
  return { "period", "nswprice", "nswdemand", "vicprice", "vicdemand", "transfer" };
}

/// Projects `raw` onto `columns` (by case-insensitive name) and checks the
/// label is binary UP/DOWN.
inline Dataset project_electricity(const Dataset& raw, const std::vector<std::string>& columns)
{
  if (raw.empty())
    throw FormatError("electricity: no records");
  if (!raw.labeled())
    throw FormatError("electricity: missing class column");
  std::vector<std::size_t> idx;
  for (const auto& c : columns) {
    auto it = std::find_if(raw.feature_names.begin(), raw.feature_names.end(),
                           [&](const std::string& n) { return detail::lower(n) == detail::lower(c); });
    if (it == raw.feature_names.end())
      throw FormatError("electricity: missing column '" + c + "'");
    idx.push_back(static_cast<std::size_t>(it - raw.feature_names.begin()));
  }
  for (const auto& name : raw.class_names)
    if (name != "UP" && name != "DOWN")
      throw FormatError("electricity: unexpected class '" + name + "'");

  Dataset out;
  out.relation = "electricity";
  out.feature_names = columns;
  out.class_names = { "UP", "DOWN" };
  out.records.reserve(raw.size());
  for (const auto& r : raw.records) {
    StreamRecord p;
    p.t = r.t;
    for (auto i : idx)
      p.features.push_back(r.features[i]);
    if (r.label)
      p.label = raw.class_names[static_cast<std::size_t>(*r.label)] == "UP" ? 0 : 1;
    out.records.push_back(std::move(p));
  }
  return out;
}

/// Loads the CSV or ARFF distribution. Dates stored as strings are not
/// supported; the normalized distribution stores every column as a real.
inline Dataset load_electricity(const std::filesystem::path& path,
                                const std::vector<std::string>& columns = electricity_default_columns())
{
  const auto raw = read_dataset(path);
  if (raw.feature_names.size() != 8)
    throw FormatError("electricity: expected 8 feature columns plus class, got " +
                      std::to_string(raw.feature_names.size()));
  return project_electricity(raw, columns);
}

/// Location of the Electricity file from EHSTREAM_ELEC_PATH, if set and present.
inline std::optional<std::filesystem::path> electricity_path_from_env()
{
  const char* p = std::getenv("EHSTREAM_ELEC_PATH");
  if (!p || !*p || !std::filesystem::exists(p))
    return std::nullopt;
  return std::filesystem::path(p);
}

} // namespace ehstream

#endif // EHSTREAM_DATA_ELECTRICITY_HPP_
