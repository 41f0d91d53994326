#pragma once

#include <array>
#include <cstdint>

namespace absorb {

/// Philox4x32-10 block function (Salmon et al., Random123). Exposed for
/// known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based random stream keyed by (seed, trial, molecule).
///
/// The key is a hash of (seed, trial_id); the 128-bit counter is
/// (block index, molecule_id). Each Philox block yields two 64-bit words,
/// i.e. two uniforms. Normals use the basic Box-Muller transform on a pair of
/// uniforms; the second variate of each pair is cached and returned by the
/// next next_normal() call. Draw order is therefore a pure function of the
/// sequence of calls made on the stream, regardless of which thread runs it.
class RandomStream {
public:
  RandomStream() = default;

  /// Uniform on (0, 1] with 53 bits of resolution.
  double next_uniform();
  /// Standard normal.
  double next_normal();

  friend bool operator==(const RandomStream &, const RandomStream &) = default;

private:
  friend RandomStream make_stream(std::uint64_t seed, std::uint64_t trial_id, std::uint64_t molecule_id);

  std::uint64_t next_word();

  std::array<std::uint32_t, 2> key_{};
  std::uint64_t molecule_{0};
  std::uint64_t block_{0};
  std::array<std::uint64_t, 2> buffer_{};
  std::uint8_t buffered_{0};
  bool has_spare_normal_{false};
  double spare_normal_{0.0};
};

RandomStream make_stream(std::uint64_t seed, std::uint64_t trial_id, std::uint64_t molecule_id);

} // namespace absorb
