#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dzlab {

// Mergeable weighted histogram with explicit out-of-range tallies.
//
// Binning is left-closed right-open, except the last bin which is closed.
// Values that fall outside [edges.front(), edges.back()] land in the
// underflow/overflow tallies, so total mass is conserved. NaN inputs are
// rejected and counted in nan_count.
struct EmpiricalDistribution {
  std::vector<double> edges;   // strictly increasing, >= 2 entries
  std::vector<double> masses;  // edges.size() - 1 entries
  double underflow = 0.0;
  double overflow = 0.0;
  std::int64_t total_samples = 0;  // accepted draws (unweighted count)
  std::int64_t nan_count = 0;
  // run metadata
  std::string label;
  std::string ensemble;
  int n = 0;
  std::uint64_t seed = 0;

  static EmpiricalDistribution with_edges(std::vector<double> edges);
  static EmpiricalDistribution uniform_edges(double lo, double hi, int bins);

  void add(double x, double w = 1.0);
  double total_mass() const;  // masses + underflow + overflow
  int bin_count() const { return static_cast<int>(masses.size()); }

  // Weighted mean / standard deviation of the in-range mass, using bin
  // centers (for bandwidth selection).
  double mean() const;
  double stddev() const;

  // Coarsens by an integer factor that must divide the bin count.
  EmpiricalDistribution rebin(int factor) const;

  // Merging requires identical edges; commutative and associative.
  static EmpiricalDistribution merge(const EmpiricalDistribution& a,
                                     const EmpiricalDistribution& b);
};

EmpiricalDistribution build_histogram(std::span<const double> values,
                                      std::vector<double> edges);
EmpiricalDistribution build_histogram(std::span<const std::pair<double, double>> weighted,
                                      std::vector<double> edges);

// Right-continuous step CDF sampled at the bin edges, normalized by the
// total mass including tails: returns (edge, F(edge)) pairs with
// F(first edge) = underflow fraction and F(last edge) = 1 - overflow fraction.
std::vector<std::pair<double, double>> empirical_cdf(const EmpiricalDistribution& dist);

struct ModeReport {
  int count = 0;
  std::vector<double> locations;  // bin centers of qualifying maxima
  double bandwidth = 0.0;
};

// Counts local maxima of the Gaussian-kernel smoothed density whose
// topographic prominence is at least `prominence_frac` of the global
// maximum. Bandwidth: 1.06 * sigma * m^{-1/5}.
ModeReport detect_modes(const EmpiricalDistribution& dist,
                        std::int64_t min_samples = 10000,
                        double prominence_frac = 0.05);

}  // namespace dzlab
