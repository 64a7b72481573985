#pragma once

#include <cstdint>
#include <vector>

namespace csgd {

// Counter-based 64-bit generator. Each draw is a stateless hash of
// (key, counter), where the key is derived from a user seed and a stream
// id. Output function is the SplitMix64 finalizer (Steele et al. 2014)
// applied to key ^ (counter * golden gamma). Streams with distinct ids
// are statistically independent, so graph / feature / ground-truth /
// estimator draws can be regenerated in isolation.
//
// All floating-point derivations (uniforms, Box-Muller normals) consume
// a fixed number of raw draws, so a (seed, stream) pair pins the whole
// sequence.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  // Uniform on (0, 1); never returns an exact endpoint.
  double uniform();

  // Uniform integer in [0, bound); rejection sampling, no modulo bias.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Standard normal via Box-Muller; the spare deviate is cached.
  double normal();

  // Uniform random subset of {0,...,n-1} of size m, returned sorted
  // ascending. m == n yields the identity set.
  std::vector<int> sample_without_replacement(int n, int m);

  // m independent uniform draws from {0,...,n-1}.
  std::vector<int> sample_with_replacement(int n, int m);

  // Derives a fresh 64-bit seed for a sub-task (e.g. per-iteration or
  // per-trial draws) from a base seed and an index.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Stream ids, one per purpose.
namespace stream {
inline constexpr std::uint64_t kAdjacency = 1;
inline constexpr std::uint64_t kFeatures = 2;
inline constexpr std::uint64_t kGroundTruth = 3;
inline constexpr std::uint64_t kInitIterate = 4;
inline constexpr std::uint64_t kEstimator = 5;
inline constexpr std::uint64_t kVerify = 6;
}  // namespace stream

}  // namespace csgd
