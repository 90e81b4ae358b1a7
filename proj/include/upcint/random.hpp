#pragma once

#include <array>
#include <cstdint>

namespace upcint {

/// Philox4x32-10 block function (Salmon et al. counter-based generator).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Fixed purpose tags; each (seed, event, purpose) triple owns an independent stream.
enum class StreamPurpose : std::uint32_t {
  Kinematics = 1,
  DecayTime = 2,
  Channel = 3,
  DecayAngles = 4,
  Source = 5,
  ProtocolModes = 6,
  Pilot = 7,
};

/// Sequential draws from the Philox stream keyed by (seed, event index, purpose).
/// The key carries the seed; the counter carries (block, purpose, index).
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t event_index, StreamPurpose purpose);

  std::uint32_t next_u32();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double exponential(double mean);

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
};

}  // namespace upcint
