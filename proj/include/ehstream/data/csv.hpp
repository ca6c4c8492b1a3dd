/**
 * @file csv.hpp
 *
 * Comma-separated streams: one header row, feature columns as decimal
 * reals, optional label column named `class` last.
 */

#ifndef EHSTREAM_DATA_CSV_HPP_
#define EHSTREAM_DATA_CSV_HPP_

#include "ehstream/data/record.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ehstream {

/// Raised for unreadable or malformed input files.
class FormatError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view line, char sep)
{
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    out.push_back(trim(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos)
      return out;
    pos = next + 1;
  }
}

inline std::string_view unquote(std::string_view s)
{
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

inline double parse_real(std::string_view s, std::size_t line_no)
{
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw FormatError("line " + std::to_string(line_no) + ": not a number: '" + std::string(s) + "'");
  return v;
}

/// Shortest round-trippable text is not required; 17 significant digits is.
inline std::string format_real(double v)
{
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

inline std::ifstream open_input(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw FormatError("cannot open " + path.string());
  return in;
}

inline std::ofstream open_output(const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  return out;
}

} // namespace detail

inline void write_csv(const Dataset& data, std::ostream& out)
{
  data.validate();
  for (std::size_t i = 0; i < data.feature_names.size(); ++i)
    out << (i ? "," : "") << data.feature_names[i];
  if (data.labeled())
    out << (data.feature_names.empty() ? "" : ",") << "class";
  out << '\n';
  for (const auto& r : data.records) {
    for (std::size_t i = 0; i < r.features.size(); ++i)
      out << (i ? "," : "") << detail::format_real(r.features[i]);
    if (data.labeled())
      out << (r.features.empty() ? "" : ",") << (r.label ? data.class_names[static_cast<std::size_t>(*r.label)] : "?");
    out << '\n';
  }
  if (!out)
    throw std::runtime_error("write_csv: stream error");
}

inline void write_csv(const Dataset& data, const std::filesystem::path& path)
{
  auto out = detail::open_output(path);
  write_csv(data, out);
}

/// Reads a CSV stream. A last column named `class` becomes the label and
/// class names are interned in first-seen order; `?` marks a missing label.
inline Dataset read_csv(std::istream& in)
{
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool has_class = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty())
      continue;
    const auto cells = detail::split(line, ',');
    if (!have_header) {
      for (auto c : cells)
        data.feature_names.emplace_back(detail::unquote(c));
      if (!data.feature_names.empty() && data.feature_names.back() == "class") {
        has_class = true;
        data.feature_names.pop_back();
      }
      have_header = true;
      continue;
    }
    const std::size_t expect = data.feature_names.size() + (has_class ? 1 : 0);
    if (cells.size() != expect)
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(expect) +
                        " columns, got " + std::to_string(cells.size()));
    StreamRecord r;
    r.t = static_cast<std::int64_t>(data.records.size());
    r.features.reserve(data.feature_names.size());
    for (std::size_t i = 0; i < data.feature_names.size(); ++i)
      r.features.push_back(detail::parse_real(cells[i], line_no));
    if (has_class) {
      const auto label = detail::unquote(cells.back());
      if (label != "?")
        r.label = data.intern_class(std::string(label));
    }
    data.records.push_back(std::move(r));
  }
  if (!have_header)
    throw FormatError("empty CSV input");
  return data;
}

inline Dataset read_csv(const std::filesystem::path& path)
{
  auto in = detail::open_input(path);
  auto data = read_csv(in);
  data.relation = path.stem().string();
  return data;
}

} // namespace ehstream

#endif // EHSTREAM_DATA_CSV_HPP_
