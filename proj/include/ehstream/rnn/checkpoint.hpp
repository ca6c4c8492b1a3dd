/**
 * @file checkpoint.hpp
 *
 * Text checkpoint of a network:
 *
 *   ehstream-checkpoint 1
 *   arch ehrnn
 *   dims <input> <hidden> <output>
 *   kernel <k>
 *   resolutions <w1> <w2> ...
 *   stats mean,var
 *   eps <eps>
 *   matrix W_h <rows> <cols>
 *   <row-major values>
 *   ...
 */

#ifndef EHSTREAM_RNN_CHECKPOINT_HPP_
#define EHSTREAM_RNN_CHECKPOINT_HPP_

#include "ehstream/data/csv.hpp"
#include "ehstream/rnn/elman.hpp"

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace ehstream {

inline constexpr int kCheckpointVersion = 1;

inline void save_checkpoint(const RnnModel& model, std::ostream& out)
{
  const auto& c = model.config;
  out << "ehstream-checkpoint " << kCheckpointVersion << '\n';
  out << "arch " << to_string(c.arch) << '\n';
  out << "dims " << c.input << ' ' << c.hidden << ' ' << c.output << '\n';
  out << "kernel " << c.pool_kernel() << '\n';
  out << "resolutions";
  for (auto w : c.resolutions)
    out << ' ' << w;
  out << '\n';
  out << "stats " << c.stats.to_string() << '\n';
  out << "eps " << detail::format_real(c.eps) << '\n';
  model.params.visit([&](const char* name, const auto& m) {
    out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        out << (j ? " " : "") << detail::format_real(m(i, j));
      out << '\n';
    }
  });
  if (!out)
    throw std::runtime_error("save_checkpoint: stream error");
}

inline void save_checkpoint(const RnnModel& model, const std::filesystem::path& path)
{
  auto out = detail::open_output(path);
  save_checkpoint(model, out);
}

inline RnnModel load_checkpoint(std::istream& in)
{
  auto expect = [&](const char* key) {
    std::string k;
    if (!(in >> k) || k != key)
      throw FormatError(std::string("checkpoint: expected '") + key + "'");
  };
  expect("ehstream-checkpoint");
  int version = 0;
  if (!(in >> version) || version != kCheckpointVersion)
    throw FormatError("checkpoint: unsupported version");

  RnnConfig c;
  std::string word;
  expect("arch");
  in >> word;
  c.arch = parse_arch(word);
  expect("dims");
  in >> c.input >> c.hidden >> c.output;
  expect("kernel");
  in >> c.kernel;
  expect("resolutions");
  std::string line;
  std::getline(in, line);
  c.resolutions.clear();
  std::istringstream rs(line);
  for (std::int64_t w; rs >> w;)
    c.resolutions.push_back(w);
  expect("stats");
  in >> word;
  c.stats = StatSet::parse(word);
  expect("eps");
  in >> word;
  c.eps = detail::parse_real(word, 0);
  if (!in)
    throw FormatError("checkpoint: truncated header");
  c.validate();

  RnnModel model{ c, ElmanParams::zeros(c) };
  model.params.visit([&](const char* name, auto& m) {
    expect("matrix");
    std::string n;
    Eigen::Index rows = 0, cols = 0;
    in >> n >> rows >> cols;
    if (n != name || rows != m.rows() || cols != m.cols())
      throw FormatError(std::string("checkpoint: bad shape for ") + name);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (!(in >> word))
          throw FormatError(std::string("checkpoint: truncated ") + name);
        m(i, j) = detail::parse_real(word, 0);
      }
  });
  return model;
}

inline RnnModel load_checkpoint(const std::filesystem::path& path)
{
  auto in = detail::open_input(path);
  return load_checkpoint(in);
}

} // namespace ehstream

#endif // EHSTREAM_RNN_CHECKPOINT_HPP_
