#include "dzlab/conditioned_mc.hpp"

#include <cmath>
#include <stdexcept>

#include "dzlab/expansions.hpp"
#include "dzlab/parallel.hpp"

namespace dzlab {

namespace {

struct RawObservables {
  double weight;
  std::array<Complex, kMomentObservables> g;
};

// Weight and observables straight from the raw phases.
RawObservables observables_from_phases(const std::vector<double>& phases, int n) {
  double w = 1.0;
  Complex sum_u{0.0, 0.0}, sum_u2{0.0, 0.0};
  for (double t : phases) {
    double q = 2.0 * std::sin(0.5 * t);
    double q2 = q * q;
    w *= q2 * q2;  // |1 - e^{it}|^4
    Complex u = reciprocal_one_minus_unit(t);
    sum_u += u;
    sum_u2 += u * u;
  }
  double nn = static_cast<double>(n);
  Complex a0 = sum_u / nn;
  Complex a1 = sum_u2 / (nn * nn);
  auto [b1, b2] = coeff_b(a0, a1, n);
  (void)b1;
  RawObservables out;
  out.weight = w;
  out.g[0] = a0;
  out.g[1] = sum_u * sum_u * sum_u;         // (n A0)^3
  out.g[2] = sum_u2;                        // n^2 A1
  out.g[3] = sum_u * sum_u * sum_u2 / nn;   // n^3 A0 A1
  out.g[4] = Complex{b2.real(), 0.0};
  return out;
}

}  // namespace

std::map<std::string, Complex> WeightedSample::observables(int n) const {
  RawObservables raw = observables_from_phases(config.raw_phases, n);
  std::map<std::string, Complex> out;
  for (int i = 0; i < kMomentObservables; ++i) out[kMomentNames[i]] = raw.g[i];
  return out;
}

WeightedSample make_weighted_sample(int n, RandomStream& rng) {
  if (n < 6) throw std::invalid_argument("make_weighted_sample: n >= 6 required");
  WeightedSample s;
  s.config = sample_cue(n - 2, rng);
  RawObservables raw = observables_from_phases(s.config.raw_phases, n);
  s.weight = raw.weight;
  double nn = static_cast<double>(n);
  s.a0 = raw.g[0];
  s.a1 = raw.g[2] / (nn * nn);
  return s;
}

void sample_weighted(int n, std::int64_t count, RandomStream& rng,
                     const std::function<void(const WeightedSample&)>& sink) {
  if (count < 1) throw std::invalid_argument("sample_weighted: count >= 1 required");
  for (std::int64_t i = 0; i < count; ++i) sink(make_weighted_sample(n, rng));
}

MomentReport MomentReport::from_batches(int n, std::vector<MomentBatch> batches) {
  if (batches.empty()) throw std::invalid_argument("MomentReport: no batches");
  MomentReport r;
  r.n = n;
  r.batch_count = static_cast<int>(batches.size());
  r.batches = std::move(batches);

  KahanAccumulator tot_w, tot_w2;
  std::array<Complex, kMomentObservables> tot_wg{};
  std::int64_t count = 0;
  for (const auto& b : r.batches) {
    tot_w.add(b.sum_w);
    tot_w2.add(b.sum_w2);
    for (int i = 0; i < kMomentObservables; ++i) tot_wg[i] += b.sum_wg[i];
    count += b.count;
  }
  r.sample_count = count;
  double sw = tot_w.value();
  double sw2 = tot_w2.value();
  r.ess = sw2 > 0.0 ? sw * sw / sw2 : 0.0;
  r.low_ess_warning = r.ess < 100.0;
  r.mean_weight = sw / static_cast<double>(count);

  MomentPolynomials poly = moment_polynomials(n);
  r.mean_weight_predicted = poly.c_n_inv;
  const std::array<double, kMomentObservables> predicted = {
      poly.a0_mean, poly.a0_cubed, poly.a1_mean, poly.a0a1_mean, poly.b2_mean};

  const int nb = r.batch_count;
  // Batch means for the unweighted mean weight.
  {
    double acc = 0.0;
    std::vector<double> bm(static_cast<std::size_t>(nb));
    for (int b = 0; b < nb; ++b) {
      bm[b] = r.batches[b].sum_w / static_cast<double>(r.batches[b].count);
      acc += (bm[b] - r.mean_weight) * (bm[b] - r.mean_weight);
    }
    r.mean_weight_se = nb > 1 ? std::sqrt(acc / (static_cast<double>(nb) * (nb - 1))) : 0.0;
  }
  for (int i = 0; i < kMomentObservables; ++i) {
    Complex mean = tot_wg[i] / sw;
    double acc = 0.0;
    for (int b = 0; b < nb; ++b) {
      if (!(r.batches[b].sum_w > 0.0)) continue;
      double bm = (r.batches[b].sum_wg[i] / r.batches[b].sum_w).real();
      acc += (bm - mean.real()) * (bm - mean.real());
    }
    double se = nb > 1 ? std::sqrt(acc / (static_cast<double>(nb) * (nb - 1))) : 0.0;
    r.moments[i].mean = mean;
    r.moments[i].std_error = se;
    r.moments[i].predicted = predicted[i];
    r.moments[i].z_score = se > 0.0 ? (mean.real() - predicted[i]) / se : 0.0;
  }
  return r;
}

MomentReport MomentReport::merge(const MomentReport& a, const MomentReport& b) {
  if (a.n != b.n) throw std::invalid_argument("MomentReport::merge: dimension mismatch");
  std::vector<MomentBatch> batches = a.batches;
  batches.insert(batches.end(), b.batches.begin(), b.batches.end());
  return from_batches(a.n, std::move(batches));
}

MomentReport estimate_moments(int n, std::int64_t count, std::uint64_t seed,
                              int batch_count, int workers, int block_offset) {
  if (batch_count < 2) throw std::invalid_argument("estimate_moments: need >= 2 batches");
  if (count < batch_count) throw std::invalid_argument("estimate_moments: count < batch count");
  std::vector<MomentBatch> batches(static_cast<std::size_t>(batch_count));
  run_blocks(batch_count, workers, [&](int b) {
    std::int64_t lo = count * b / batch_count;
    std::int64_t hi = count * (b + 1) / batch_count;
    RandomStream rng(
        RandomStream::block_seed(seed, static_cast<std::uint64_t>(b + block_offset)));
    MomentBatch acc;
    for (std::int64_t i = lo; i < hi; ++i) {
      EigenphaseConfig cfg = sample_cue(n - 2, rng);
      RawObservables raw = observables_from_phases(cfg.raw_phases, n);
      acc.count += 1;
      acc.sum_w += raw.weight;
      acc.sum_w2 += raw.weight * raw.weight;
      for (int k = 0; k < kMomentObservables; ++k) acc.sum_wg[k] += raw.weight * raw.g[k];
    }
    batches[static_cast<std::size_t>(b)] = acc;
  });
  return MomentReport::from_batches(n, std::move(batches));
}

OneLevelResult empirical_one_level(int n, std::int64_t count, std::uint64_t seed,
                                   std::vector<double> edges, int batch_count,
                                   int workers) {
  if (count < batch_count) throw std::invalid_argument("empirical_one_level: count < batches");
  auto proto = EmpiricalDistribution::with_edges(std::move(edges));
  const int nbins = proto.bin_count();
  const int m = n - 2;

  struct BinBatch {
    double sum_w = 0.0;
    std::vector<double> sum_wk;
    std::int64_t count = 0;
    std::int64_t total_samples = 0;
    double under = 0.0, over = 0.0;
  };
  std::vector<BinBatch> batches(static_cast<std::size_t>(batch_count));
  for (auto& b : batches) b.sum_wk.assign(static_cast<std::size_t>(nbins), 0.0);

  run_blocks(batch_count, workers, [&](int bidx) {
    std::int64_t lo = count * bidx / batch_count;
    std::int64_t hi = count * (bidx + 1) / batch_count;
    RandomStream rng(RandomStream::block_seed(seed, static_cast<std::uint64_t>(bidx)));
    BinBatch& acc = batches[static_cast<std::size_t>(bidx)];
    EmpiricalDistribution scratch = proto;
    for (std::int64_t i = lo; i < hi; ++i) {
      EigenphaseConfig cfg = sample_cue(m, rng);
      double w = 1.0;
      for (double t : cfg.raw_phases) {
        double q = 2.0 * std::sin(0.5 * t);
        double q2 = q * q;
        w *= q2 * q2;
      }
      std::fill(scratch.masses.begin(), scratch.masses.end(), 0.0);
      scratch.underflow = scratch.overflow = 0.0;
      for (double x : cfg.rescaled) scratch.add(x, 1.0);  // xi = t m / (2 pi)
      acc.count += 1;
      acc.sum_w += w;
      for (int k = 0; k < nbins; ++k) {
        acc.sum_wk[static_cast<std::size_t>(k)] += w * scratch.masses[static_cast<std::size_t>(k)];
      }
      acc.under += w * scratch.underflow;
      acc.over += w * scratch.overflow;
      acc.total_samples += m;
    }
  });

  KahanAccumulator tot_w;
  for (const auto& b : batches) tot_w.add(b.sum_w);
  double sw = tot_w.value();

  OneLevelResult out;
  out.n = n;
  out.sample_count = count;
  out.hist = proto;
  out.hist.label = "one_level_xi";
  out.hist.n = n;
  out.hist.seed = seed;
  out.std_errors.assign(static_cast<std::size_t>(nbins), 0.0);
  out.w1_integrals.assign(static_cast<std::size_t>(nbins), 0.0);
  for (int k = 0; k < nbins; ++k) {
    KahanAccumulator num;
    for (const auto& b : batches) num.add(b.sum_wk[static_cast<std::size_t>(k)]);
    double mean = num.value() / sw;
    out.hist.masses[static_cast<std::size_t>(k)] = mean;
    double acc = 0.0;
    for (const auto& b : batches) {
      if (!(b.sum_w > 0.0)) continue;
      double bm = b.sum_wk[static_cast<std::size_t>(k)] / b.sum_w;
      acc += (bm - mean) * (bm - mean);
    }
    out.std_errors[static_cast<std::size_t>(k)] =
        std::sqrt(acc / (static_cast<double>(batch_count) * (batch_count - 1)));
    out.w1_integrals[static_cast<std::size_t>(k)] = adaptive_simpson(
        [](double t) { return one_level_density_w1(2, t); }, out.hist.edges[k],
        out.hist.edges[k + 1], 1e-10);
  }
  double under_sum = 0.0, over_sum = 0.0;
  std::int64_t total_samples = 0;
  for (const auto& b : batches) {
    under_sum += b.under;
    over_sum += b.over;
    total_samples += b.total_samples;
  }
  out.hist.underflow = under_sum / sw;
  out.hist.overflow = over_sum / sw;
  out.hist.total_samples = total_samples;
  return out;
}

}  // namespace dzlab
