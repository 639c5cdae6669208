#include "dzlab/ensembles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "dzlab/lapack_eig.hpp"
#include "dzlab/numerics.hpp"

namespace dzlab {

namespace {

std::atomic<std::uint64_t> g_resample_count{0};

constexpr double kUnitCircleTol = 1e-10;
constexpr int kMaxResamples = 64;

double phase_in_range(std::complex<double> z) {
  double t = std::atan2(z.imag(), z.real());
  if (t <= -kPi) t += kTwoPi;  // atan2 can return -pi exactly
  return t;
}

EigenphaseConfig config_from_angles(int n, std::vector<double> phases,
                                    Ensemble tag, std::uint64_t seed) {
  std::sort(phases.begin(), phases.end());
  EigenphaseConfig cfg;
  cfg.n = n;
  cfg.raw_phases = std::move(phases);
  cfg.rescaled.resize(cfg.raw_phases.size());
  for (std::size_t j = 0; j < cfg.raw_phases.size(); ++j) {
    cfg.rescaled[j] = (n * cfg.raw_phases[j]) / kTwoPi;
  }
  cfg.ensemble = tag;
  cfg.seed = seed;
  return cfg;
}

Eigen::MatrixXcd haar_unitary(int n, RandomStream& rng) {
  Eigen::MatrixXcd z(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      z(i, j) = rng.complex_normal();
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  // Phase correction: multiply column j by r_jj / |r_jj|. Plain QR without
  // this fix is not Haar-distributed.
  for (int j = 0; j < n; ++j) {
    std::complex<double> r = qr.matrixQR()(j, j);
    double mag = std::abs(r);
    std::complex<double> lambda = (mag > 0.0) ? r / mag : std::complex<double>(1.0, 0.0);
    q.col(j) *= lambda;
  }
  return q;
}

// Extracts unimodular eigenphases, enforcing |lambda| = 1 to kUnitCircleTol.
// Returns false (keep resampling) on tolerance failure.
bool unimodular_phases(Eigen::MatrixXcd& m, std::vector<double>& out) {
  std::vector<std::complex<double>> eig = eigenvalues_inplace(m);
  out.clear();
  out.reserve(eig.size());
  for (const auto& z : eig) {
    if (std::abs(std::abs(z) - 1.0) > kUnitCircleTol) return false;
    out.push_back(phase_in_range(z));
  }
  return true;
}

}  // namespace

std::string to_string(Ensemble e) {
  switch (e) {
    case Ensemble::kCue: return "cue";
    case Ensemble::kCoe: return "coe";
    case Ensemble::kPoisson: return "poisson";
    case Ensemble::kExplicit: return "explicit";
  }
  return "unknown";
}

Ensemble ensemble_from_string(const std::string& name) {
  if (name == "cue") return Ensemble::kCue;
  if (name == "coe") return Ensemble::kCoe;
  if (name == "poisson") return Ensemble::kPoisson;
  if (name == "explicit") return Ensemble::kExplicit;
  throw std::invalid_argument("unknown ensemble: " + name);
}

EigenphaseConfig EigenphaseConfig::from_raw_phases(int n, std::vector<double> phases,
                                                   Ensemble tag, std::uint64_t seed) {
  if (n <= 0 || phases.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("from_raw_phases: need exactly n phases");
  }
  for (double t : phases) {
    if (!(t > -kPi - 1e-15) || !(t <= kPi + 1e-15)) {
      throw std::invalid_argument("from_raw_phases: phase outside (-pi, pi]");
    }
  }
  return config_from_angles(n, std::move(phases), tag, seed);
}

EigenphaseConfig EigenphaseConfig::from_rescaled(int n, const std::vector<double>& xs,
                                                 Ensemble tag, std::uint64_t seed) {
  std::vector<double> phases(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    phases[j] = kTwoPi * xs[j] / n;
  }
  return EigenphaseConfig::from_raw_phases(n, std::move(phases), tag, seed);
}

EigenphaseConfig sample_cue(int n, RandomStream& rng) {
  if (n < 2) throw std::invalid_argument("sample_cue: n >= 2 required");
  std::vector<double> phases;
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    Eigen::MatrixXcd u = haar_unitary(n, rng);
    if (unimodular_phases(u, phases)) {
      return config_from_angles(n, std::move(phases), Ensemble::kCue, rng.seed());
    }
    g_resample_count.fetch_add(1, std::memory_order_relaxed);
  }
  throw SamplerError("sample_cue: persistent eigenvalue tolerance failure", rng.seed());
}

EigenphaseConfig sample_coe(int n, RandomStream& rng) {
  if (n < 2) throw std::invalid_argument("sample_coe: n >= 2 required");
  std::vector<double> phases;
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    Eigen::MatrixXcd u = haar_unitary(n, rng);
    Eigen::MatrixXcd w = u * u.transpose();
    double asym = (w - w.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
      throw SamplerError("sample_coe: U U^T failed symmetry check", rng.seed());
    }
    w = 0.5 * (w + w.transpose().eval());
    if (unimodular_phases(w, phases)) {
      return config_from_angles(n, std::move(phases), Ensemble::kCoe, rng.seed());
    }
    g_resample_count.fetch_add(1, std::memory_order_relaxed);
  }
  throw SamplerError("sample_coe: persistent eigenvalue tolerance failure", rng.seed());
}

EigenphaseConfig sample_poisson(int n, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_poisson: n >= 1 required");
  std::vector<double> phases(static_cast<std::size_t>(n));
  for (auto& t : phases) {
    t = kPi * (1.0 - 2.0 * rng.uniform());  // (-pi, pi]
  }
  return config_from_angles(n, std::move(phases), Ensemble::kPoisson, rng.seed());
}

std::uint64_t cue_resample_count() { return g_resample_count.load(); }

std::vector<double> nearest_spacings(const EigenphaseConfig& config) {
  const auto& x = config.rescaled;
  const std::size_t n = x.size();
  std::vector<double> gaps(n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    gaps[j] = x[j + 1] - x[j];
  }
  gaps[n - 1] = (x[0] + config.n) - x[n - 1];
  return gaps;
}

}  // namespace dzlab
