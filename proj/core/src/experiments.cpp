#include "dzlab/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "dzlab/expansions.hpp"
#include "dzlab/parallel.hpp"
#include "dzlab/polyderiv.hpp"

namespace dzlab {

namespace {

EigenphaseConfig draw(Ensemble e, int n, RandomStream& rng) {
  switch (e) {
    case Ensemble::kCue: return sample_cue(n, rng);
    case Ensemble::kCoe: return sample_coe(n, rng);
    case Ensemble::kPoisson: return sample_poisson(n, rng);
    case Ensemble::kExplicit: break;
  }
  throw std::invalid_argument("run_survey: explicit ensemble cannot be sampled");
}

}  // namespace

SurveyResult run_survey(const SurveyOptions& opts) {
  if (opts.samples < 1) throw std::invalid_argument("run_survey: samples >= 1");
  if (opts.blocks < 1 || opts.blocks > opts.samples) {
    throw std::invalid_argument("run_survey: need 1 <= blocks <= samples");
  }
  std::vector<double> s_edges = opts.s_edges;
  if (s_edges.empty()) s_edges = EmpiricalDistribution::uniform_edges(0.0, 10.0, 200).edges;
  std::vector<double> gap_edges = opts.gap_edges;
  if (gap_edges.empty()) gap_edges = EmpiricalDistribution::uniform_edges(0.0, 5.0, 500).edges;

  const int nb = opts.blocks;
  std::vector<EmpiricalDistribution> s_parts(static_cast<std::size_t>(nb),
                                             EmpiricalDistribution::with_edges(s_edges));
  std::vector<EmpiricalDistribution> gap_parts(static_cast<std::size_t>(nb),
                                               EmpiricalDistribution::with_edges(gap_edges));
  std::vector<SurveyBlockStat> stats(static_cast<std::size_t>(nb));

  run_blocks(nb, opts.workers, [&](int b) {
    std::int64_t lo = opts.samples * b / nb;
    std::int64_t hi = opts.samples * (b + 1) / nb;
    RandomStream rng(RandomStream::block_seed(opts.seed, static_cast<std::uint64_t>(b)));
    auto& s_hist = s_parts[static_cast<std::size_t>(b)];
    auto& gap_hist = gap_parts[static_cast<std::size_t>(b)];
    auto& stat = stats[static_cast<std::size_t>(b)];
    stat.gaps_le.assign(opts.gap_thresholds.size(), 0);
    for (std::int64_t i = lo; i < hi; ++i) {
      EigenphaseConfig cfg = draw(opts.ensemble, opts.n, rng);
      ++stat.configs;
      if (opts.collect_roots) {
        DerivRootSet set = deriv_roots_all(cfg);
        stat.flagged += set.flagged_count;
        for (std::size_t k = 0; k < set.s_values.size(); ++k) {
          if (!set.flagged[k]) s_hist.add(set.s_values[k]);
        }
      }
      if (opts.collect_gaps) {
        for (double g : nearest_spacings(cfg)) {
          gap_hist.add(g);
          ++stat.gaps;
          for (std::size_t t = 0; t < opts.gap_thresholds.size(); ++t) {
            if (g <= opts.gap_thresholds[t]) ++stat.gaps_le[t];
          }
        }
      }
    }
  });

  SurveyResult result;
  result.s_hist = s_parts[0];
  result.gap_hist = gap_parts[0];
  for (int b = 1; b < nb; ++b) {
    result.s_hist = EmpiricalDistribution::merge(result.s_hist, s_parts[static_cast<std::size_t>(b)]);
    result.gap_hist = EmpiricalDistribution::merge(result.gap_hist, gap_parts[static_cast<std::size_t>(b)]);
  }
  result.s_hist.label = "deriv_root_distance";
  result.s_hist.ensemble = to_string(opts.ensemble);
  result.s_hist.n = opts.n;
  result.s_hist.seed = opts.seed;
  result.gap_hist.label = "nearest_spacing";
  result.gap_hist.ensemble = to_string(opts.ensemble);
  result.gap_hist.n = opts.n;
  result.gap_hist.seed = opts.seed;
  result.blocks = std::move(stats);
  for (const auto& st : result.blocks) {
    result.configs += st.configs;
    result.flagged_total += st.flagged;
  }

  // Batch-means fractions at the gap thresholds.
  for (std::size_t t = 0; t < opts.gap_thresholds.size(); ++t) {
    SurveyThresholdStat ts;
    ts.s = opts.gap_thresholds[t];
    std::int64_t le = 0, gaps = 0;
    for (const auto& st : result.blocks) {
      le += st.gaps_le[t];
      gaps += st.gaps;
    }
    if (gaps > 0) {
      ts.fraction = static_cast<double>(le) / static_cast<double>(gaps);
      double acc = 0.0;
      int used = 0;
      for (const auto& st : result.blocks) {
        if (st.gaps == 0) continue;
        double f = static_cast<double>(st.gaps_le[t]) / static_cast<double>(st.gaps);
        acc += (f - ts.fraction) * (f - ts.fraction);
        ++used;
      }
      if (used > 1) ts.std_error = std::sqrt(acc / (static_cast<double>(used) * (used - 1)));
    }
    result.thresholds.push_back(ts);
  }
  return result;
}

ExpansionFitResult verify_expansion(int n, std::vector<double> thetas, int trials,
                                    std::uint64_t seed, double background_margin) {
  if (thetas.size() != 3) throw std::invalid_argument("verify_expansion: need three thetas");
  std::sort(thetas.begin(), thetas.end());
  if (!(thetas[0] > 0.0)) throw std::invalid_argument("verify_expansion: thetas > 0");
  ExpansionFitResult result;
  result.n = n;
  result.thetas = thetas;
  result.trials.reserve(static_cast<std::size_t>(trials));
  RandomStream rng(seed);

  const double p2 = kPi * kPi;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> background(static_cast<std::size_t>(n - 2));
    for (auto& x : background) {
      double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      x = sign * rng.uniform(background_margin, n / 2.0);
    }
    // Frozen background, three gaps.
    std::array<Complex, 3> delta;
    std::array<double, 3> u;
    for (int i = 0; i < 3; ++i) {
      PairConfig pair(n, thetas[static_cast<std::size_t>(i)], background);
      Complex w = root_in_disk(pair);
      delta[static_cast<std::size_t>(i)] = static_cast<double>(n) * w;
      u[static_cast<std::size_t>(i)] = thetas[static_cast<std::size_t>(i)] *
                                       thetas[static_cast<std::size_t>(i)];
    }
    // delta/(pi^2 u) = b1 + (pi^2 u) b2 + (pi^2 u)^2 b3; solve the 3x3 system.
    std::array<Complex, 3> rhs;
    std::array<std::array<double, 3>, 3> m;
    for (int i = 0; i < 3; ++i) {
      double v = p2 * u[static_cast<std::size_t>(i)];
      rhs[static_cast<std::size_t>(i)] = delta[static_cast<std::size_t>(i)] / v;
      m[static_cast<std::size_t>(i)] = {1.0, v, v * v};
    }
    auto det3 = [](const std::array<std::array<double, 3>, 3>& a) {
      return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
             a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
             a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    double det = det3(m);
    auto solve_col = [&](int col) {
      std::array<std::array<Complex, 3>, 3> a;
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
              (c == col) ? rhs[static_cast<std::size_t>(r)]
                         : Complex{m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], 0.0};
        }
      }
      Complex d = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                  a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                  a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
      return d / det;
    };

    ExpansionFitTrial t;
    t.b1_fit = solve_col(0);
    t.b2_fit = solve_col(1);
    auto coeffs = expansion_coefficients(background, n, 1);
    t.b1_closed = coeffs.b1;
    t.b2_closed = coeffs.b2;

    // Remainder order from the two largest gaps against the closed forms.
    auto remainder = [&](int i) {
      return std::abs(delta[static_cast<std::size_t>(i)] -
                      predict_delta(coeffs.b1, coeffs.b2, thetas[static_cast<std::size_t>(i)]));
    };
    double r_small = remainder(1);
    double r_large = remainder(2);
    t.remainder_order = std::log(r_large / r_small) / std::log(thetas[2] / thetas[1]);
    result.trials.push_back(t);
  }
  return result;
}

UniquenessResult uniqueness_check(int n, double theta_max, std::int64_t trials,
                                  std::uint64_t seed, int workers, int blocks) {
  if (!(theta_max > 0.0 && theta_max < 1.0 / kPi)) {
    throw std::invalid_argument("uniqueness_check: 0 < theta_max < 1/pi required");
  }
  if (blocks > trials) blocks = static_cast<int>(trials);
  struct Block {
    std::int64_t violations = 0;
    std::vector<PairConfig> configs;
    std::map<int, std::int64_t> counts;
  };
  std::vector<Block> parts(static_cast<std::size_t>(blocks));

  run_blocks(blocks, workers, [&](int b) {
    std::int64_t lo = trials * b / blocks;
    std::int64_t hi = trials * (b + 1) / blocks;
    RandomStream rng(RandomStream::block_seed(seed, static_cast<std::uint64_t>(b)));
    Block& part = parts[static_cast<std::size_t>(b)];
    for (std::int64_t i = lo; i < hi; ++i) {
      double theta = theta_max * (1.0 - rng.uniform());  // (0, theta_max]
      std::vector<double> background(static_cast<std::size_t>(n - 2));
      for (auto& x : background) {
        double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        x = sign * rng.uniform(theta / 2.0, n / 2.0);
      }
      PairConfig pair(n, theta, std::move(background));
      int count;
      try {
        count = count_roots_in_contour(pair);
      } catch (const ContourResolutionError&) {
        count = -1;  // recorded as a violation with its configuration
      }
      ++part.counts[count];
      if (count != 1) {
        ++part.violations;
        if (part.configs.size() < 16) part.configs.push_back(pair);
      }
    }
  });

  UniquenessResult result;
  result.n = n;
  result.trials = trials;
  result.theta_max = theta_max;
  for (auto& part : parts) {
    result.violations += part.violations;
    for (auto& [count, c] : part.counts) result.count_histogram[count] += c;
    for (auto& cfg : part.configs) {
      if (result.violation_configs.size() < 16) {
        result.violation_configs.push_back(std::move(cfg));
      }
    }
  }
  return result;
}

}  // namespace dzlab
