#pragma once

#include <cstdint>
#include <random>

namespace swipekit {

// Deterministic random source. The engine (mt19937_64) is fully specified by
// the standard, and all value mappings below are hand-rolled, so the same seed
// yields the same sample sequence on every platform and compiler.
class RngHandle {
 public:
  explicit RngHandle(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1): 53 high bits of the raw draw.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1].
  double next_open_unit() { return 1.0 - next_unit(); }

  // Uniform in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Uniform index in [0, n). n must be > 0.
  std::size_t next_index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace swipekit
