#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace sboxevo {

// Deterministic random stream shared by every stochastic operator.
//
// Draw protocol (one engine step per call unless noted):
//   below(k)   - one step, mapped to [0, k) by 128-bit multiply-high
//   coin()     - one step, low bit
//   chance(p)  - one step, top 53 bits compared against p
//   shuffle(v) - size-1 steps, Fisher-Yates from the back
//
// Operators document their draw order in terms of these calls so a run
// can be replayed exactly from its seed.
class RandomSource {
public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // uniform over [0, bound); bound must be nonzero
  std::uint32_t below(std::uint32_t bound) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  std::size_t index(std::size_t bound) {
    return static_cast<std::size_t>(below(static_cast<std::uint32_t>(bound)));
  }

  bool coin() { return (next() & 1u) != 0; }

  bool chance(double p) { return (next() >> 11) * 0x1.0p-53 < p; }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = index(i);
      std::swap(values[i - 1], values[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace sboxevo
