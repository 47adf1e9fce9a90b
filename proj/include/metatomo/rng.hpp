// Counter-based random number generator.
//
// Each draw hashes (key, counter) with the SplitMix64 finalizer, so streams
// are stateless apart from the counter: identical (seed, stream) always
// reproduce the identical sequence regardless of what other streams did.
// Splitting rule: key(seed, stream) =
//   mix(mix(seed + GOLDEN) + MOREMUR * (stream + 1))
// Sub-streams for parallel work derive their seed via split(seed, stream).
#pragma once

#include <complex>
#include <cstdint>

namespace metatomo {

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  // uniform in [0, 1), 53-bit resolution
  double uniform01();
  // standard normal via Box-Muller (second value of each pair is cached)
  double normal();
  // re and im each N(0, 1/2), so E|z|^2 = 1
  std::complex<double> normal_complex();

  // Derive an independent sub-seed; documented splitting rule for parallel
  // workers: worker i uses CounterRng(split(base_seed, i)).
  static std::uint64_t split(std::uint64_t seed, std::uint64_t stream);

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace metatomo
