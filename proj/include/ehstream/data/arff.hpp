/**
 * @file arff.hpp
 *
 * ARFF export and import restricted to numeric attributes plus one nominal
 * `class` attribute declared last.
 */

#ifndef EHSTREAM_DATA_ARFF_HPP_
#define EHSTREAM_DATA_ARFF_HPP_

#include "ehstream/data/csv.hpp"
#include "ehstream/data/record.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ehstream {

namespace detail {

inline std::string lower(std::string_view s)
{
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

inline bool starts_with_ci(std::string_view s, std::string_view prefix)
{
  return s.size() >= prefix.size() && lower(s.substr(0, prefix.size())) == lower(prefix);
}

inline std::string arff_quote(const std::string& name)
{
  if (name.find_first_of(" \t,{}'\"%") == std::string::npos && !name.empty())
    return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + "'";
}

/// Splits the next token off an @attribute line, honoring quotes.
inline std::string next_token(std::string_view& s)
{
  s = trim(s);
  std::string tok;
  if (!s.empty() && (s.front() == '\'' || s.front() == '"')) {
    const char q = s.front();
    std::size_t i = 1;
    for (; i < s.size() && s[i] != q; ++i) {
      if (s[i] == '\\' && i + 1 < s.size())
        ++i;
      tok += s[i];
    }
    s.remove_prefix(std::min(i + 1, s.size()));
    return tok;
  }
  std::size_t i = 0;
  while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '{')
    ++i;
  tok = std::string(s.substr(0, i));
  s.remove_prefix(i);
  return tok;
}

} // namespace detail

/// Writes numeric attributes followed by `class {v0,v1,...}` with the class
/// values in the dataset's first-seen order.
inline void write_arff(const Dataset& data, std::ostream& out)
{
  data.validate();
  out << "@relation " << detail::arff_quote(data.relation) << "\n\n";
  for (const auto& n : data.feature_names)
    out << "@attribute " << detail::arff_quote(n) << " numeric\n";
  if (data.labeled()) {
    out << "@attribute class {";
    for (std::size_t i = 0; i < data.class_names.size(); ++i)
      out << (i ? "," : "") << detail::arff_quote(data.class_names[i]);
    out << "}\n";
  }
  out << "\n@data\n";
  for (const auto& r : data.records) {
    for (std::size_t i = 0; i < r.features.size(); ++i)
      out << (i ? "," : "") << detail::format_real(r.features[i]);
    if (data.labeled())
      out << (r.features.empty() ? "" : ",")
          << (r.label ? detail::arff_quote(data.class_names[static_cast<std::size_t>(*r.label)]) : "?");
    out << '\n';
  }
  if (!out)
    throw std::runtime_error("write_arff: stream error");
}

inline void write_arff(const Dataset& data, const std::filesystem::path& path)
{
  auto out = detail::open_output(path);
  write_arff(data, out);
}

/// Reads an ARFF file. Numeric attributes become features; a nominal
/// attribute named `class` (declared last) becomes the label with its
/// declared value order. Other nominal attributes are rejected.
inline Dataset read_arff(std::istream& in)
{
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  bool in_data = false;
  bool has_class = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = detail::trim(line);
    if (s.empty() || s.front() == '%')
      continue;
    if (!in_data) {
      if (detail::starts_with_ci(s, "@relation")) {
        s.remove_prefix(9);
        data.relation = detail::next_token(s);
      } else if (detail::starts_with_ci(s, "@attribute")) {
        if (has_class)
          throw FormatError("line " + std::to_string(line_no) + ": class must be the last attribute");
        s.remove_prefix(10);
        std::string name = detail::next_token(s);
        s = detail::trim(s);
        if (!s.empty() && s.front() == '{') {
          if (detail::lower(name) != "class")
            throw FormatError("line " + std::to_string(line_no) + ": unsupported nominal attribute '" + name + "'");
          const auto close = s.find('}');
          if (close == std::string_view::npos)
            throw FormatError("line " + std::to_string(line_no) + ": unterminated nominal list");
          for (auto v : detail::split(s.substr(1, close - 1), ','))
            data.intern_class(std::string(detail::unquote(v)));
          has_class = true;
        } else {
          const auto type = detail::lower(detail::trim(s));
          if (type != "numeric" && type != "real" && type != "integer")
            throw FormatError("line " + std::to_string(line_no) + ": unsupported attribute type '" + type + "'");
          data.feature_names.push_back(std::move(name));
        }
      } else if (detail::starts_with_ci(s, "@data")) {
        in_data = true;
      } else {
        throw FormatError("line " + std::to_string(line_no) + ": unexpected header line");
      }
      continue;
    }
    const auto cells = detail::split(s, ',');
    const std::size_t expect = data.feature_names.size() + (has_class ? 1 : 0);
    if (cells.size() != expect)
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(expect) +
                        " columns, got " + std::to_string(cells.size()));
    StreamRecord r;
    r.t = static_cast<std::int64_t>(data.records.size());
    for (std::size_t i = 0; i < data.feature_names.size(); ++i)
      r.features.push_back(detail::parse_real(cells[i], line_no));
    if (has_class) {
      const std::string label(detail::unquote(cells.back()));
      if (label != "?") {
        auto it = std::find(data.class_names.begin(), data.class_names.end(), label);
        if (it == data.class_names.end())
          throw FormatError("line " + std::to_string(line_no) + ": undeclared class '" + label + "'");
        r.label = static_cast<int>(it - data.class_names.begin());
      }
    }
    data.records.push_back(std::move(r));
  }
  if (!in_data)
    throw FormatError("ARFF input has no @data section");
  return data;
}

inline Dataset read_arff(const std::filesystem::path& path)
{
  auto in = detail::open_input(path);
  return read_arff(in);
}

/// Dispatches on the file extension (.arff, otherwise CSV).
inline Dataset read_dataset(const std::filesystem::path& path)
{
  return detail::lower(path.extension().string()) == ".arff" ? read_arff(path) : read_csv(path);
}

inline void write_dataset(const Dataset& data, const std::filesystem::path& path)
{
  if (detail::lower(path.extension().string()) == ".arff")
    write_arff(data, path);
  else
    write_csv(data, path);
}

} // namespace ehstream

#endif // EHSTREAM_DATA_ARFF_HPP_
