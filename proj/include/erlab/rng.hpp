#ifndef ERLAB_RNG_HPP
#define ERLAB_RNG_HPP

#include <cstdint>
#include <random>

namespace erlab {

// One step of SplitMix64; also used as a 64-bit mixing function.
std::uint64_t splitmix64(std::uint64_t& state);

// Seed of the substream owned by `stream_index` under `master_seed`.
// Two rounds of SplitMix64 keep neighbouring indices decorrelated.
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t stream_index);

// Reproducible random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; uniform variates are derived from
// raw engine output by hand so results do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_substream(std::uint64_t master_seed, std::uint64_t stream_index) {
    return Rng(substream_seed(master_seed, stream_index));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_open_closed() { return 1.0 - uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace erlab

#endif  // ERLAB_RNG_HPP
