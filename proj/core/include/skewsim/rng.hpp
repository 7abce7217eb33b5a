#pragma once

#include <array>
#include <cstdint>

namespace skewsim {

/// Philox4x32-10 block function; exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based uniform stream.
///
/// The key is the 64-bit seed; the counter is (block, stream_id), so every
/// (seed, stream_id) pair addresses its own sequence with no shared state.
/// Uniform and normal draws are defined bit-for-bit here (no use of
/// <random> distributions, whose output is implementation-defined).
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Raw 64-bit output.
  std::uint64_t next_u64();

  /// Uniform on the open interval (0,1): ((u >> 11) + 0.5) * 2^-53.
  double uniform();

  /// Uniform on (lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal by inversion (AS241) of one uniform.
  double normal();

  /// Exponential with unit rate, -log(U).
  double exponential();

private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace skewsim
