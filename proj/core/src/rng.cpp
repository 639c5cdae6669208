#include "dzlab/rng.hpp"

#include <cmath>

namespace dzlab {

namespace {

// splitmix64 step; used only to decorrelate block seeds.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RandomStream::block_seed(std::uint64_t master, std::uint64_t block) {
  std::uint64_t state = master;
  std::uint64_t a = splitmix64(state);
  state = a ^ (block * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  std::uint64_t b = splitmix64(state);
  return b ^ (a >> 1);
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0,1] so the log is finite.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double c = std::cos(6.283185307179586476925286766559 * u2);
  double s = std::sin(6.283185307179586476925286766559 * u2);
  spare_ = r * s;
  has_spare_ = true;
  return r * c;
}

std::complex<double> RandomStream::complex_normal() {
  const double inv_sqrt2 = 0.70710678118654752440;
  double re = normal();
  double im = normal();
  return {re * inv_sqrt2, im * inv_sqrt2};
}

}  // namespace dzlab
