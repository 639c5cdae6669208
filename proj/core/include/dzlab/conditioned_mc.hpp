#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dzlab/ensembles.hpp"
#include "dzlab/histogram.hpp"
#include "dzlab/numerics.hpp"

namespace dzlab {

// One importance-sampling draw for the doubly-degenerate conditioning at
// dimension n: a Haar U(n-2) configuration weighted by |Lambda(1)|^4.
// a0/a1 are the normalized reciprocal power sums taken at dimension
// parameter n over the n-2 sampled phases.
struct WeightedSample {
  EigenphaseConfig config;
  double weight = 0.0;
  Complex a0;
  Complex a1;

  // Named observables in the reporting convention: A0 stays normalized,
  // the cubic/product entries are of the unnormalized sums, B2 = Re b2.
  std::map<std::string, Complex> observables(int n) const;
};

WeightedSample make_weighted_sample(int n, RandomStream& rng);

// Streams `count` samples into `sink`; deterministic per (n, seed of rng).
void sample_weighted(int n, std::int64_t count, RandomStream& rng,
                     const std::function<void(const WeightedSample&)>& sink);

inline constexpr int kMomentObservables = 5;
inline const std::array<const char*, kMomentObservables> kMomentNames = {
    "A0", "A0^3", "A1", "A0A1", "B2"};

struct MomentEstimate {
  Complex mean;
  double std_error = 0.0;  // batch means over the real part
  double predicted = 0.0;
  double z_score = 0.0;
};

struct MomentBatch {
  std::int64_t count = 0;
  double sum_w = 0.0;
  double sum_w2 = 0.0;
  std::array<Complex, kMomentObservables> sum_wg{};
};

// Self-normalized importance-sampling averages with batch-means errors and
// z-scores against the closed-form moment polynomials.
struct MomentReport {
  int n = 0;
  std::int64_t sample_count = 0;
  int batch_count = 0;
  double ess = 0.0;
  bool low_ess_warning = false;
  double mean_weight = 0.0;
  double mean_weight_se = 0.0;
  double mean_weight_predicted = 0.0;
  std::array<MomentEstimate, kMomentObservables> moments{};
  std::vector<MomentBatch> batches;  // kept so reports merge exactly

  static MomentReport from_batches(int n, std::vector<MomentBatch> batches);
  // Concatenates batch lists (disjoint seed ranges); totals re-derived.
  static MomentReport merge(const MomentReport& a, const MomentReport& b);
};

// Runs `count` samples split into `batch_count` contiguous seed blocks.
// block_offset shifts the block indices so disjoint seed ranges can be run
// separately and merged into exactly the union report.
MomentReport estimate_moments(int n, std::int64_t count, std::uint64_t seed,
                              int batch_count = 50, int workers = 1,
                              int block_offset = 0);

// Weighted histogram of the rescaled phases xi = t (n-2) / (2 pi),
// normalized so the total mass per configuration is n-2. Bin masses carry
// batch-means standard errors and the matching integrals of the a = 2
// limiting density.
struct OneLevelResult {
  int n = 0;
  std::int64_t sample_count = 0;
  EmpiricalDistribution hist;
  std::vector<double> std_errors;
  std::vector<double> w1_integrals;
};

OneLevelResult empirical_one_level(int n, std::int64_t count, std::uint64_t seed,
                                   std::vector<double> edges, int batch_count = 50,
                                   int workers = 1);

}  // namespace dzlab
