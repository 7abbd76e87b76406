#pragma once

#include <cstdint>
#include <random>

namespace fdnoma {

/// Independent random streams keyed by (base_seed, drop_index, stream tag,
/// two link/node indices). Each stream is a std::mt19937_64 seeded through a
/// SplitMix64 hash of the key, so adding a new stream never shifts the draws
/// of an existing one and drops can be generated in any order.
enum class StreamTag : std::uint64_t {
  RrhPosition = 1,
  DlPosition = 2,
  UlPosition = 3,
  FadingRrhDl = 16,
  FadingUlRrh = 17,
  FadingUlDl = 18,
  FadingRrhRrh = 19,
  ScaRestart = 32,
  Test = 64,
};

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t stream_key(std::uint64_t base_seed, std::uint64_t drop_index, StreamTag tag,
                         std::uint64_t a = 0, std::uint64_t b = 0);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : engine_(key) {}
  RandomStream(std::uint64_t base_seed, std::uint64_t drop_index, StreamTag tag,
               std::uint64_t a = 0, std::uint64_t b = 0)
      : engine_(stream_key(base_seed, drop_index, tag, a, b)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Exponential(1) by inversion; never negative.
  double exponential();

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fdnoma
