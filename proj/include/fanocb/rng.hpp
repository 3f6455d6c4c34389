#pragma once

#include <cstdint>
#include <random>

namespace fanocb {

/// Seeded generator with a platform-independent integer mapping.
/// Sub-streams are derived from (seed, stream, index) so that every sample
/// draws from its own generator and results do not depend on draw order.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
    std::uint64_t s = splitmix(seed);
    s = splitmix(s ^ (stream * 0x9E3779B97F4A7C15ULL));
    return splitmix(s ^ (index + 0xD1B54A32D192ED03ULL));
  }

  static Rng derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
    return Rng(mix(seed, stream, index));
  }

  /// Uniform on [lo, hi] by rejection; lo <= hi.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
  }

  /// Uniform on [-range, range] without zero; range >= 1.
  std::int64_t nonzero(std::int64_t range) {
    const std::int64_t v = uniform(1, 2 * range);
    return v <= range ? v : range - v;
  }

private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace fanocb
