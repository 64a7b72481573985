#include "csgd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csgd {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed + kGolden) + stream * kGolden)) {}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(key_ ^ (counter_ * kGolden));
}

double CounterRng::uniform() {
  // 53-bit mantissa, offset by half an ulp to land in the open interval.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t CounterRng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound == 0");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x < limit) return x % bound;
  }
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::vector<int> CounterRng::sample_without_replacement(int n, int m) {
  if (m < 0 || m > n) {
    throw std::invalid_argument("sample_without_replacement: m out of range");
  }
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  // Partial Fisher-Yates: the first m slots become the sample.
  for (int i = 0; i < m; ++i) {
    const int j =
        i + static_cast<int>(uniform_below(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(m));
  // Index sets are sets; sorting makes the full-count draw reproduce the
  // exact sum in the same order as the full computation.
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<int> CounterRng::sample_with_replacement(int n, int m) {
  if (m < 0) throw std::invalid_argument("sample_with_replacement: m < 0");
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    idx[static_cast<std::size_t>(i)] =
        static_cast<int>(uniform_below(static_cast<std::uint64_t>(n)));
  }
  return idx;
}

std::uint64_t CounterRng::derive(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed + kGolden) ^ (index * kGolden + 1));
}

}  // namespace csgd
