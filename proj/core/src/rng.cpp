#include "fdnoma/rng.hpp"

#include <cmath>

namespace fdnoma {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_key(std::uint64_t base_seed, std::uint64_t drop_index, StreamTag tag,
                         std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = splitmix64(base_seed);
  h = splitmix64(h ^ drop_index);
  h = splitmix64(h ^ static_cast<std::uint64_t>(tag));
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return h;
}

double RandomStream::exponential() { return -std::log1p(-uniform()); }

}  // namespace fdnoma
