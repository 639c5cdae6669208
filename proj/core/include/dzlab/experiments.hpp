#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dzlab/contour.hpp"
#include "dzlab/ensembles.hpp"
#include "dzlab/histogram.hpp"
#include "dzlab/numerics.hpp"

namespace dzlab {

// One streaming pass over sampled configurations: derivative-root distances
// into an S histogram, optionally nearest-neighbor gaps and threshold counts.
// Work is split into `blocks` contiguous seed blocks (fixed independently of
// the worker count); per-block tallies double as batch-means batches.
struct SurveyOptions {
  Ensemble ensemble = Ensemble::kCue;
  int n = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  int blocks = 50;
  std::vector<double> s_edges;          // empty: 200 bins on [0, 10]
  bool collect_roots = true;
  bool collect_gaps = false;
  std::vector<double> gap_edges;        // empty: 500 bins on [0, 5]
  std::vector<double> gap_thresholds;   // empirical P(theta <= s) checkpoints
};

struct SurveyBlockStat {
  std::int64_t configs = 0;
  std::int64_t gaps = 0;
  std::vector<std::int64_t> gaps_le;  // one per threshold
  std::int64_t flagged = 0;
};

struct SurveyThresholdStat {
  double s = 0.0;
  double fraction = 0.0;
  double std_error = 0.0;  // batch means over blocks
};

struct SurveyResult {
  EmpiricalDistribution s_hist;    // flagged roots excluded
  EmpiricalDistribution gap_hist;
  std::vector<SurveyBlockStat> blocks;
  std::vector<SurveyThresholdStat> thresholds;
  std::int64_t configs = 0;
  std::int64_t flagged_total = 0;
};

SurveyResult run_survey(const SurveyOptions& opts);

// Fits the quadratic/quartic displacement coefficients from measured
// delta(theta) at three gaps against the closed forms, per random background.
struct ExpansionFitTrial {
  Complex b1_fit, b2_fit;
  Complex b1_closed, b2_closed;
  double remainder_order = 0.0;  // from the two largest thetas
};

struct ExpansionFitResult {
  int n = 0;
  std::vector<double> thetas;
  std::vector<ExpansionFitTrial> trials;
};

ExpansionFitResult verify_expansion(int n, std::vector<double> thetas, int trials,
                                    std::uint64_t seed, double background_margin = 0.5);

// Uniqueness trials: random gap theta <= theta_max, admissible random
// background, argument-principle count of derivative roots in the pair disk.
struct UniquenessResult {
  int n = 0;
  std::int64_t trials = 0;
  double theta_max = 0.0;
  std::int64_t violations = 0;
  std::vector<PairConfig> violation_configs;  // capped at 16
  std::map<int, std::int64_t> count_histogram;
};

UniquenessResult uniqueness_check(int n, double theta_max, std::int64_t trials,
                                  std::uint64_t seed, int workers = 1, int blocks = 50);

}  // namespace dzlab
