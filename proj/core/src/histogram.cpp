#include "dzlab/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dzlab/numerics.hpp"

namespace dzlab {

EmpiricalDistribution EmpiricalDistribution::with_edges(std::vector<double> edges) {
  if (edges.size() < 2) throw std::invalid_argument("histogram: need >= 2 edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      throw std::invalid_argument("histogram: edges must be strictly increasing");
    }
  }
  EmpiricalDistribution d;
  d.edges = std::move(edges);
  d.masses.assign(d.edges.size() - 1, 0.0);
  return d;
}

EmpiricalDistribution EmpiricalDistribution::uniform_edges(double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("histogram: bad range");
  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) {
    edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / bins;
  }
  edges.back() = hi;
  return with_edges(std::move(edges));
}

void EmpiricalDistribution::add(double x, double w) {
  if (std::isnan(x) || std::isnan(w)) {
    ++nan_count;
    return;
  }
  ++total_samples;
  if (x < edges.front()) {
    underflow += w;
    return;
  }
  if (x > edges.back()) {
    overflow += w;
    return;
  }
  if (x == edges.back()) {  // last bin is closed
    masses.back() += w;
    return;
  }
  auto it = std::upper_bound(edges.begin(), edges.end(), x);
  std::size_t idx = static_cast<std::size_t>(it - edges.begin()) - 1;
  masses[idx] += w;
}

double EmpiricalDistribution::total_mass() const {
  KahanAccumulator acc;
  for (double m : masses) acc.add(m);
  acc.add(underflow);
  acc.add(overflow);
  return acc.value();
}

double EmpiricalDistribution::mean() const {
  double m0 = 0.0, m1 = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    double c = 0.5 * (edges[i] + edges[i + 1]);
    m0 += masses[i];
    m1 += masses[i] * c;
  }
  return m0 > 0.0 ? m1 / m0 : 0.0;
}

double EmpiricalDistribution::stddev() const {
  double mu = mean();
  double m0 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    double c = 0.5 * (edges[i] + edges[i + 1]);
    m0 += masses[i];
    m2 += masses[i] * (c - mu) * (c - mu);
  }
  return m0 > 0.0 ? std::sqrt(m2 / m0) : 0.0;
}

EmpiricalDistribution EmpiricalDistribution::rebin(int factor) const {
  if (factor <= 0 || bin_count() % factor != 0) {
    throw std::invalid_argument("rebin: factor must divide bin count");
  }
  EmpiricalDistribution out;
  out.edges.reserve(masses.size() / factor + 1);
  out.masses.assign(masses.size() / static_cast<std::size_t>(factor), 0.0);
  for (std::size_t i = 0; i < edges.size(); i += factor) out.edges.push_back(edges[i]);
  for (std::size_t i = 0; i < masses.size(); ++i) out.masses[i / factor] += masses[i];
  out.underflow = underflow;
  out.overflow = overflow;
  out.total_samples = total_samples;
  out.nan_count = nan_count;
  out.label = label;
  out.ensemble = ensemble;
  out.n = n;
  out.seed = seed;
  return out;
}

EmpiricalDistribution EmpiricalDistribution::merge(const EmpiricalDistribution& a,
                                                   const EmpiricalDistribution& b) {
  if (a.edges != b.edges) throw std::invalid_argument("merge: edge mismatch");
  EmpiricalDistribution out = a;
  for (std::size_t i = 0; i < out.masses.size(); ++i) out.masses[i] += b.masses[i];
  out.underflow += b.underflow;
  out.overflow += b.overflow;
  out.total_samples += b.total_samples;
  out.nan_count += b.nan_count;
  return out;
}

EmpiricalDistribution build_histogram(std::span<const double> values,
                                      std::vector<double> edges) {
  auto d = EmpiricalDistribution::with_edges(std::move(edges));
  for (double v : values) d.add(v);
  return d;
}

EmpiricalDistribution build_histogram(std::span<const std::pair<double, double>> weighted,
                                      std::vector<double> edges) {
  auto d = EmpiricalDistribution::with_edges(std::move(edges));
  for (const auto& [x, w] : weighted) d.add(x, w);
  return d;
}

std::vector<std::pair<double, double>> empirical_cdf(const EmpiricalDistribution& dist) {
  double total = dist.total_mass();
  if (!(total > 0.0)) throw std::invalid_argument("empirical_cdf: empty distribution");
  std::vector<std::pair<double, double>> out;
  out.reserve(dist.edges.size());
  KahanAccumulator cum;
  cum.add(dist.underflow);
  out.emplace_back(dist.edges.front(), cum.value() / total);
  for (std::size_t i = 0; i < dist.masses.size(); ++i) {
    cum.add(dist.masses[i]);
    out.emplace_back(dist.edges[i + 1], cum.value() / total);
  }
  return out;
}

ModeReport detect_modes(const EmpiricalDistribution& dist,
                        std::int64_t min_samples, double prominence_frac) {
  if (dist.total_samples < min_samples) {
    throw std::invalid_argument("detect_modes: too few samples (" +
                                std::to_string(dist.total_samples) + " < " +
                                std::to_string(min_samples) + ")");
  }
  const int nb = dist.bin_count();
  double sigma = dist.stddev();
  double m = static_cast<double>(dist.total_samples);
  double bw = 1.06 * sigma * std::pow(m, -0.2);
  if (!(bw > 0.0)) throw std::invalid_argument("detect_modes: degenerate distribution");

  // Gaussian smoothing on bin centers; densities so uneven widths are fine.
  std::vector<double> center(nb), density(nb), smooth(nb, 0.0);
  for (int i = 0; i < nb; ++i) {
    center[i] = 0.5 * (dist.edges[i] + dist.edges[i + 1]);
    double w = dist.edges[i + 1] - dist.edges[i];
    density[i] = dist.masses[i] / w;
  }
  for (int i = 0; i < nb; ++i) {
    double acc = 0.0, norm = 0.0;
    for (int j = 0; j < nb; ++j) {
      double u = (center[i] - center[j]) / bw;
      if (std::abs(u) > 8.0) continue;
      double k = std::exp(-0.5 * u * u);
      acc += k * density[j];
      norm += k;
    }
    smooth[i] = norm > 0.0 ? acc / norm : 0.0;
  }

  double global_max = *std::max_element(smooth.begin(), smooth.end());
  double min_prom = prominence_frac * global_max;

  ModeReport report;
  report.bandwidth = bw;
  for (int i = 0; i < nb; ++i) {
    bool left_ok = (i == 0) || smooth[i] > smooth[i - 1];
    bool right_ok = (i == nb - 1) || smooth[i] >= smooth[i + 1];
    if (!(left_ok && right_ok)) continue;
    if (i + 1 < nb && smooth[i] == smooth[i + 1]) continue;  // plateau: keep right end only
    // Topographic prominence: walk out until terrain rises above the peak,
    // tracking the minimum; the higher of the two side minima is the key col.
    double peak = smooth[i];
    double left_base = peak, right_base = peak;
    for (int j = i - 1; j >= 0; --j) {
      if (smooth[j] > peak) break;
      left_base = std::min(left_base, smooth[j]);
    }
    for (int j = i + 1; j < nb; ++j) {
      if (smooth[j] > peak) break;
      right_base = std::min(right_base, smooth[j]);
    }
    double prominence = peak - std::max(left_base, right_base);
    if (peak == global_max) prominence = peak;  // global max always qualifies
    if (prominence >= min_prom) {
      ++report.count;
      report.locations.push_back(center[i]);
    }
  }
  return report;
}

}  // namespace dzlab
