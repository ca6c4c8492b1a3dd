/**
 * @file sine_mixed.hpp
 *
 * Two-concept sine stream y_t = A (sin(theta_t) + a_c) with sudden,
 * incremental or reoccurring transitions between concept 0 and concept 1.
 * theta advances by `step` per sample across the whole stream.
 */

#ifndef EHSTREAM_DATA_SINE_MIXED_HPP_
#define EHSTREAM_DATA_SINE_MIXED_HPP_

#include "ehstream/data/record.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ehstream {

struct SineConceptSpec
{
  double amplitude = 10.0;
  std::array<double, 2> offsets{ 2.0, 3.0 };
  double step = 2.0 * std::numbers::pi / 100.0;
  std::int64_t n = 10000; ///< samples per concept; the stream has 2n records
  std::uint64_t seed = 1;

  void validate() const
  {
    if (n < 1)
      throw std::invalid_argument("samples per concept must be >= 1");
    if (!(step > 0.0) || !std::isfinite(step))
      throw std::invalid_argument("step must be positive");
    if (!std::isfinite(amplitude) || !std::isfinite(offsets[0]) || !std::isfinite(offsets[1]))
      throw std::invalid_argument("amplitude and offsets must be finite");
  }

  std::int64_t total() const { return 2 * n; }
};

enum class DriftKind
{
  Sudden,
  Incremental,
  Reoccurring
};

inline DriftKind parse_drift_kind(std::string_view s)
{
  if (s == "sudden")
    return DriftKind::Sudden;
  if (s == "incremental")
    return DriftKind::Incremental;
  if (s == "reoccurring" || s == "recurring")
    return DriftKind::Reoccurring;
  throw std::invalid_argument("unknown drift kind '" + std::string(s) + "'");
}

inline const char* to_string(DriftKind k)
{
  switch (k) {
    case DriftKind::Sudden:
      return "sudden";
    case DriftKind::Incremental:
      return "incremental";
    case DriftKind::Reoccurring:
      return "reoccurring";
  }
  return "?";
}

struct DriftSpec
{
  DriftKind kind = DriftKind::Sudden;
  std::optional<std::int64_t> tau; ///< sudden switch point; defaults to n
  double ramp_begin = 1.0 / 3.0;   ///< incremental ramp start, fraction of the stream
  double ramp_end = 2.0 / 3.0;     ///< incremental ramp end, fraction of the stream
  std::int64_t chunk_len = 500;    ///< reoccurring chunk length

  void validate(const SineConceptSpec& spec) const
  {
    switch (kind) {
      case DriftKind::Sudden:
        if (tau && (*tau < 0 || *tau > spec.total()))
          throw std::invalid_argument("tau must lie in [0, stream length]");
        break;
      case DriftKind::Incremental:
        if (!(ramp_begin >= 0.0) || !(ramp_end <= 1.0) || !(ramp_begin < ramp_end))
          throw std::invalid_argument("incremental ramp needs 0 <= begin < end <= 1");
        break;
      case DriftKind::Reoccurring:
        if (chunk_len < 1)
          throw std::invalid_argument("chunk length must be >= 1");
        break;
    }
  }
};

/// y = A (sin(theta) + a).
inline double sine_value(double amplitude, double theta, double offset)
{
  return amplitude * (std::sin(theta) + offset);
}

/// Probability of drawing concept 1 at index t of a stream of `total` records.
inline double incremental_probability(std::int64_t t, std::int64_t total, const DriftSpec& drift)
{
  const double begin = drift.ramp_begin * static_cast<double>(total);
  const double end = drift.ramp_end * static_cast<double>(total);
  const double x = static_cast<double>(t);
  if (x <= begin)
    return 0.0;
  if (x >= end)
    return 1.0;
  return (x - begin) / (end - begin);
}

/// One chunk of a reoccurring stream: concept and chunk index within it.
struct ChunkRef
{
  int concept_id = 0;
  std::int64_t index = 0;
  std::int64_t length = 0;

  friend bool operator==(const ChunkRef&, const ChunkRef&) = default;
};

/// Each concept's n samples split into chunks of chunk_len (last one
/// possibly shorter), then all chunks shuffled with the spec seed.
inline std::vector<ChunkRef> reoccurring_chunk_order(const SineConceptSpec& spec, const DriftSpec& drift)
{
  std::vector<ChunkRef> chunks;
  for (int c = 0; c < 2; ++c)
    for (std::int64_t i = 0, start = 0; start < spec.n; ++i, start += drift.chunk_len)
      chunks.push_back(ChunkRef{ c, i, std::min(drift.chunk_len, spec.n - start) });
  std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  std::shuffle(chunks.begin(), chunks.end(), rng);
  return chunks;
}

/// Concept label of every record of the stream.
inline std::vector<int> concept_schedule(const SineConceptSpec& spec, const DriftSpec& drift)
{
  spec.validate();
  drift.validate(spec);
  const std::int64_t total = spec.total();
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(total));
  switch (drift.kind) {
    case DriftKind::Sudden: {
      const std::int64_t tau = drift.tau.value_or(spec.n);
      for (std::int64_t t = 0; t < total; ++t)
        labels.push_back(t < tau ? 0 : 1);
      break;
    }
    case DriftKind::Incremental: {
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (std::int64_t t = 0; t < total; ++t)
        labels.push_back(u(rng) < incremental_probability(t, total, drift) ? 1 : 0);
      break;
    }
    case DriftKind::Reoccurring:
      for (const auto& ch : reoccurring_chunk_order(spec, drift))
        labels.insert(labels.end(), static_cast<std::size_t>(ch.length), ch.concept_id);
      break;
  }
  return labels;
}

/// The sineMixed stream: one feature `y`, classes "0" and "1".
inline Dataset gen_sine_mixed(const SineConceptSpec& spec, const DriftSpec& drift)
{
  const auto labels = concept_schedule(spec, drift);
  Dataset out;
  out.relation = std::string("sine-mixed-") + to_string(drift.kind);
  out.feature_names = { "y" };
  out.class_names = { "0", "1" };
  out.records.reserve(labels.size());
  for (std::size_t t = 0; t < labels.size(); ++t) {
    const double theta = spec.step * static_cast<double>(t);
    out.records.push_back(StreamRecord{ static_cast<std::int64_t>(t),
                                        { sine_value(spec.amplitude, theta, spec.offsets[static_cast<std::size_t>(labels[t])]) },
                                        labels[t] });
  }
  return out;
}

} // namespace ehstream

#endif // EHSTREAM_DATA_SINE_MIXED_HPP_
