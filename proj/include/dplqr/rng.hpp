#pragma once

#include <cstdint>

namespace dplqr {

/// Counter-based uniform stream: the k-th draw is a pure function of
/// (key, k), so per-trial streams split from a master seed are independent of
/// execution order.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  /// Stateless SplitMix64-style mix of a 64-bit word.
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Derives the stream key for one trial of a run.
  static std::uint64_t trial_key(std::uint64_t master_seed, std::uint64_t trial) {
    return mix(mix(master_seed) ^ mix(trial + 0x632be59bd9b4e019ULL));
  }

  std::uint64_t next_u64() { return mix(key_ ^ counter_++); }

  /// Uniform in the open interval (0,1); never returns an endpoint.
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dplqr
