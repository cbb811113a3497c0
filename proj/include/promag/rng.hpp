#pragma once

#include <cstdint>

namespace promag {

// Deterministic 64-bit generator (splitmix64 update). Used instead of the
// standard distributions so seeded runs produce identical bytes on every
// platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n must be positive. The modulo bias is irrelevant for
  // the tiny ranges used here.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

private:
  std::uint64_t state_;
};

}  // namespace promag
