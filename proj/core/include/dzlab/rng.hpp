#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace dzlab {

// Deterministic random stream. The generator is mt19937_64 (bit-exact across
// platforms); floating-point conversions are done by hand so results do not
// depend on the standard library's distribution implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  // Seed for worker block `block` of a run seeded with `master`. Blocks are
  // fixed at configuration time, so the worker count never changes results.
  static std::uint64_t block_seed(std::uint64_t master, std::uint64_t block);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; the paired variate is cached.
  double normal();

  // Complex standard normal: variance 1/2 per component.
  std::complex<double> complex_normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace dzlab
