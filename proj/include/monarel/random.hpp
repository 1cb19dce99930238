#pragma once

#include <cstdint>
#include <random>

namespace monarel {

/// Seeded generator with platform-independent draws (std distributions are
/// implementation defined, which would break byte-identical reports).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (engine_() >> 17) & 1U; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace monarel
