#pragma once

#include <cstdint>
#include <random>

namespace pursuit {

// Deterministic random source. mt19937_64 has a standard-specified output
// sequence, and all value mappings below are done by hand, so the same seed
// yields the same stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const auto wide = static_cast<unsigned __int128>(gen_()) * span;
    return lo + static_cast<int>(wide >> 64);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace pursuit
