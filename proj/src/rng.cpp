#include "erlab/rng.hpp"

namespace erlab {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::uint64_t state = master_seed;
  const std::uint64_t base = splitmix64(state);
  state = base ^ stream_index;
  splitmix64(state);
  return splitmix64(state);
}

}  // namespace erlab
