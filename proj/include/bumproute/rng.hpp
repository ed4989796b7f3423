#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace bumproute {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for the stream at `path` below `master`, e.g. {n, trial}.
/// Depends only on its arguments, so per-trial streams are independent of
/// scheduling and thread count.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t s = splitmix64(master);
  for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

/// Seedable 64-bit generator (std::mt19937_64). Uniform draws are built from
/// the raw 64-bit output rather than std::uniform_real_distribution so that
/// sequences are identical across standard library implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1): (k + 1/2) / 2^53 for k in [0, 2^53).
  double uniform_open01() {
    const std::uint64_t k = engine_() >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
  }

  SeededRng child(std::initializer_list<std::uint64_t> path) const { return SeededRng(derive_seed(seed_, path)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace bumproute
