#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dzlab/rng.hpp"

namespace dzlab {

enum class Ensemble { kCue, kCoe, kPoisson, kExplicit };

std::string to_string(Ensemble e);
Ensemble ensemble_from_string(const std::string& name);

// A sorted eigenphase configuration with unit mean spacing after rescaling.
//
// raw_phases holds n angles t_j in (-pi, pi]; rescaled holds x_j = n t_j/(2 pi)
// in ascending order, so x_1 <= ... <= x_n < x_1 + n. Consumers extend the
// sequence periodically: x_{n+k} = x_k + n. The n wraparound gaps always sum
// to n, i.e. the mean spacing is exactly one.
struct EigenphaseConfig {
  int n = 0;
  std::vector<double> raw_phases;
  std::vector<double> rescaled;
  Ensemble ensemble = Ensemble::kExplicit;
  std::uint64_t seed = 0;

  // Builds a config from raw angles in (-pi, pi]; sorts and rescales.
  static EigenphaseConfig from_raw_phases(int n, std::vector<double> phases,
                                          Ensemble tag = Ensemble::kExplicit,
                                          std::uint64_t seed = 0);

  // Builds a config from rescaled positions in (-n/2, n/2]. The stored
  // rescaled values are recomputed from the derived angles so the relation
  // x_j = n t_j / (2 pi) holds bit-for-bit.
  static EigenphaseConfig from_rescaled(int n, const std::vector<double>& xs,
                                        Ensemble tag = Ensemble::kExplicit,
                                        std::uint64_t seed = 0);
};

struct SamplerError : std::runtime_error {
  SamplerError(const std::string& what, std::uint64_t seed)
      : std::runtime_error(what + " (stream seed " + std::to_string(seed) + ")"),
        seed(seed) {}
  std::uint64_t seed;
};

// Haar-distributed U(n) eigenphases: complex Gaussian matrix, Householder QR,
// then the diagonal phase correction that makes the distribution exactly Haar.
// Draws whose eigenvalues deviate from the unit circle by more than 1e-10 are
// rejected and resampled (counted in cue_resample_count).
EigenphaseConfig sample_cue(int n, RandomStream& rng);

// COE(n) eigenphases: U Haar on U(n), then the symmetric unitary U U^T.
EigenphaseConfig sample_coe(int n, RandomStream& rng);

// n independent uniform phases on (-pi, pi].
EigenphaseConfig sample_poisson(int n, RandomStream& rng);

// Total rejected-and-resampled draws in this process (unit-circle tolerance).
std::uint64_t cue_resample_count();

// Wraparound nearest-neighbor gaps theta_j = x_{j+1} - x_j >= 0 in index
// order (the last entry closes the circle); the n gaps sum to n.
std::vector<double> nearest_spacings(const EigenphaseConfig& config);

}  // namespace dzlab
