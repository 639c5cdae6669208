#include "dzlab/zeta.hpp"

#include <algorithm>
#include <cmath>

#include "dzlab/contour.hpp"
#include "dzlab/expansions.hpp"
#include "dzlab/parallel.hpp"

namespace dzlab::zeta {

namespace {

constexpr double kMaxHeight = 1e4;
constexpr int kBernoulliOrders = 5;  // through B10
const double kB2k[kBernoulliOrders + 1] = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0};  // B12 drives the remainder estimate

// Rising factorial q(s) = s (s+1) ... (s+2k-2) with first two s-derivatives.
struct Poly3 {
  Complex q{1.0, 0.0}, dq{0.0, 0.0}, d2q{0.0, 0.0};
  void mult_linear(Complex root_shift) {
    d2q = d2q * root_shift + 2.0 * dq;
    dq = dq * root_shift + q;
    q = q * root_shift;
  }
};

Values euler_maclaurin(Complex s, int terms) {
  Values v{};
  KahanAccumulator re0, im0, re1, im1, re2, im2;
  for (int n = 1; n <= terms; ++n) {
    double ln = std::log(static_cast<double>(n));
    Complex p = std::exp(-s * ln);
    re0.add(p.real());
    im0.add(p.imag());
    re1.add(-ln * p.real());
    im1.add(-ln * p.imag());
    re2.add(ln * ln * p.real());
    im2.add(ln * ln * p.imag());
  }
  v.zeta = {re0.value(), im0.value()};
  v.dzeta = {re1.value(), im1.value()};
  v.d2zeta = {re2.value(), im2.value()};

  const double m = static_cast<double>(terms);
  const double lm = std::log(m);
  const Complex mp = std::exp(-s * lm);  // M^{-s}
  const Complex inv = 1.0 / (s - 1.0);

  // M^{1-s} / (s-1)
  Complex a = m * mp * inv;
  v.zeta += a;
  v.dzeta += -lm * a - a * inv;
  v.d2zeta += lm * lm * a + 2.0 * lm * a * inv + 2.0 * a * inv * inv;

  // - M^{-s} / 2
  v.zeta -= 0.5 * mp;
  v.dzeta += 0.5 * lm * mp;
  v.d2zeta -= 0.5 * lm * lm * mp;

  // Bernoulli corrections: B_{2k}/(2k)! q_k(s) M^{-s-2k+1} with
  // q_k(s) = s (s+1) ... (s+2k-2).
  Poly3 q;
  q.mult_linear(s);
  double fact = 2.0;     // (2k)!
  double mpow = 1.0 / m; // M^{1-2k}
  for (int k = 1; k <= kBernoulliOrders; ++k) {
    if (k > 1) {
      fact *= (2.0 * k - 1.0) * (2.0 * k);
      q.mult_linear(s + Complex{static_cast<double>(2 * k - 3), 0.0});
      q.mult_linear(s + Complex{static_cast<double>(2 * k - 2), 0.0});
      mpow /= m * m;
    }
    double c = kB2k[k - 1] / fact;
    Complex base = mp * mpow;
    v.zeta += c * q.q * base;
    v.dzeta += c * (q.dq - lm * q.q) * base;
    v.d2zeta += c * (q.d2q - 2.0 * lm * q.dq + lm * lm * q.q) * base;
  }
  return v;
}

// Magnitude of the first omitted (B12) correction times the classical
// remainder factor |s + 2K + 1| / (sigma + 2K + 1).
double remainder_estimate(Complex s, int terms) {
  const double m = static_cast<double>(terms);
  double q = std::abs(s);
  for (int i = 1; i <= 10; ++i) q *= std::abs(s + Complex{static_cast<double>(i), 0.0});
  double fact12 = 479001600.0;  // 12!
  double term = std::abs(kB2k[5]) / fact12 * q * std::pow(m, -s.real() - 11.0);
  double factor = std::abs(s + 11.0) / std::max(1e-6, s.real() + 11.0);
  return term * factor;
}

}  // namespace

Values zeta_and_derivatives(Complex s, double target_abs_err) {
  if (std::abs(s.imag()) > kMaxHeight) {
    throw UnsupportedRange("zeta: height above 1e4 unsupported");
  }
  if (std::abs(s - Complex{1.0, 0.0}) < 1e-8) {
    throw std::domain_error("zeta: pole at s = 1");
  }
  int terms = std::max(24, static_cast<int>(std::ceil(std::abs(s.imag()))) + 20);
  for (int attempt = 0; attempt < 12; ++attempt) {
    double est = remainder_estimate(s, terms);
    double lm = std::log(static_cast<double>(terms));
    if (est * (1.0 + lm) * (1.0 + lm) <= target_abs_err || attempt == 11) {
      return euler_maclaurin(s, terms);
    }
    terms = static_cast<int>(std::ceil(terms * 1.4)) + 8;
  }
  return euler_maclaurin(s, terms);
}

std::pair<Complex, Complex> zeta_and_derivative(Complex s, double target_abs_err) {
  Values v = zeta_and_derivatives(s, target_abs_err);
  return {v.zeta, v.dzeta};
}

double zero_density(double t) { return std::log(t / (4.0 * kPi)) / kTwoPi; }
double zeta_zero_density(double t) { return std::log(t / kTwoPi) / kTwoPi; }

double integrated_zero_density(double a, double b) {
  auto anti = [](double t) { return t * (std::log(t / (4.0 * kPi)) - 1.0) / kTwoPi; };
  return anti(b) - anti(a);
}

double riemann_siegel_theta(double t) {
  // Asymptotic expansion; ample below height 1e4 for t >= 50.
  double u = t / 2.0;
  return u * std::log(u / kPi) - u - kPi / 8.0 + 1.0 / (48.0 * t) +
         7.0 / (5760.0 * t * t * t) + 31.0 / (80640.0 * std::pow(t, 5));
}

double hardy_z(double t) {
  Values v = zeta_and_derivatives(Complex{0.5, t}, 1e-10);
  Complex rotated = std::polar(1.0, riemann_siegel_theta(t)) * v.zeta;
  return rotated.real();
}

std::vector<double> zeta_zero_ordinates(double t_lo, double t_hi) {
  if (!(t_lo >= 100.0 && t_hi > t_lo && t_hi <= kMaxHeight)) {
    throw std::invalid_argument("zeta_zero_ordinates: need 100 <= t_lo < t_hi <= 1e4");
  }
  auto count_pass = [&](double step, std::vector<double>& out) {
    out.clear();
    double prev_t = t_lo;
    double prev_z = hardy_z(prev_t);
    while (prev_t < t_hi) {
      double next_t = std::min(prev_t + step, t_hi);
      double next_z = hardy_z(next_t);
      if ((prev_z < 0.0) != (next_z < 0.0)) {
        double a = prev_t, b = next_t, za = prev_z;
        for (int i = 0; i < 48 && b - a > 1e-10; ++i) {
          double mid = 0.5 * (a + b);
          double zm = hardy_z(mid);
          if ((za < 0.0) != (zm < 0.0)) {
            b = mid;
          } else {
            a = mid;
            za = zm;
          }
        }
        out.push_back(0.5 * (a + b));
      }
      prev_t = next_t;
      prev_z = next_z;
    }
  };
  double mean_gap = kTwoPi / std::log(t_hi / kTwoPi);
  double step = 0.2 * mean_gap;
  std::vector<double> zeros, finer;
  count_pass(step, zeros);
  for (int r = 0; r < 3; ++r) {
    count_pass(step / 3.0, finer);
    if (finer.size() == zeros.size()) break;
    zeros = finer;
    step /= 3.0;
  }
  if (!finer.empty()) zeros = finer;
  return zeros;
}

namespace {

int winding_rectangle(double sigma_lo, double sigma_hi, double t_lo, double t_hi,
                      double eval_err) {
  auto g = [eval_err](Complex s) { return zeta_and_derivatives(s, eval_err).dzeta; };
  auto line = [](Complex a, Complex b) {
    return ContourSegment{[=](double t) { return a + t * (b - a); }, 8};
  };
  Complex c00{sigma_lo, t_lo}, c10{sigma_hi, t_lo}, c11{sigma_hi, t_hi}, c01{sigma_lo, t_hi};
  std::vector<ContourSegment> segs{line(c00, c10), line(c10, c11), line(c11, c01),
                                   line(c01, c00)};
  return winding_number(g, segs, kPi / 4.0, 44);
}

struct BoxScanState {
  std::vector<ZetaPrimeZero> zeros;
  std::int64_t subdivisions = 0;
  std::vector<std::string> failures;
};

void refine_zero(double sigma_lo, double sigma_hi, double t_lo, double t_hi,
                 BoxScanState& state) {
  Complex s{0.5 * (sigma_lo + sigma_hi), 0.5 * (t_lo + t_hi)};
  for (int it = 0; it < 60; ++it) {
    Values v = zeta_and_derivatives(s, 1e-12);
    if (v.d2zeta == Complex{0.0, 0.0}) break;
    Complex step = v.dzeta / v.d2zeta;
    s -= step;
    if (std::abs(step) < 1e-12 * (1.0 + std::abs(s))) break;
  }
  double margin = 5e-3 + (t_hi - t_lo);
  if (s.imag() < t_lo - margin || s.imag() > t_hi + margin || s.real() < 0.0 ||
      s.real() > 4.0) {
    state.failures.push_back("newton escaped box near t=" + std::to_string(0.5 * (t_lo + t_hi)));
    return;
  }
  Values v = zeta_and_derivatives(s, 1e-12);
  ZetaPrimeZero zero;
  zero.beta = s.real();
  zero.gamma = s.imag();
  zero.normalized_x = (zero.beta - 0.5) * std::log(zero.gamma / kTwoPi);
  zero.residual = std::abs(v.dzeta);
  if (!(zero.residual < 1e-8)) {
    state.failures.push_back("residual " + std::to_string(zero.residual) + " at t=" +
                             std::to_string(zero.gamma));
    return;
  }
  if (!(zero.beta > 0.5)) {
    // Left-of-line zeros are reported, never silently kept.
    state.failures.push_back("beta <= 1/2 at t=" + std::to_string(zero.gamma));
    return;
  }
  state.zeros.push_back(zero);
}

void subdivide_box(double sigma_lo, double sigma_hi, double t_lo, double t_hi,
                   int count, int depth, BoxScanState& state) {
  if (count <= 0) return;
  if (depth > 60) {
    state.failures.push_back("max subdivision depth at t=" + std::to_string(t_lo));
    return;
  }
  if (count == 1 && (t_hi - t_lo) <= 2e-3) {
    refine_zero(sigma_lo, sigma_hi, t_lo, t_hi, state);
    return;
  }
  ++state.subdivisions;
  bool split_t = (t_hi - t_lo) >= (sigma_hi - sigma_lo) || (t_hi - t_lo) > 2e-3;
  for (int attempt = 0; attempt < 4; ++attempt) {
    double frac = 0.5 + 0.137 * attempt * ((attempt % 2 == 0) ? 1.0 : -1.0);
    int c1 = 0, c2 = 0;
    try {
      if (split_t) {
        double mid = t_lo + frac * (t_hi - t_lo);
        c1 = winding_rectangle(sigma_lo, sigma_hi, t_lo, mid, 1e-10);
        c2 = winding_rectangle(sigma_lo, sigma_hi, mid, t_hi, 1e-10);
        if (c1 + c2 != count) continue;
        subdivide_box(sigma_lo, sigma_hi, t_lo, mid, c1, depth + 1, state);
        subdivide_box(sigma_lo, sigma_hi, mid, t_hi, c2, depth + 1, state);
      } else {
        double mid = sigma_lo + frac * (sigma_hi - sigma_lo);
        c1 = winding_rectangle(sigma_lo, mid, t_lo, t_hi, 1e-10);
        c2 = winding_rectangle(mid, sigma_hi, t_lo, t_hi, 1e-10);
        if (c1 + c2 != count) continue;
        subdivide_box(sigma_lo, mid, t_lo, t_hi, c1, depth + 1, state);
        subdivide_box(mid, sigma_hi, t_lo, t_hi, c2, depth + 1, state);
      }
      return;
    } catch (const ContourResolutionError&) {
      continue;  // split line grazed a zero; jitter and retry
    }
  }
  state.failures.push_back("box count mismatch after max subdivision at t=" +
                           std::to_string(t_lo) + ".." + std::to_string(t_hi));
}

}  // namespace

int count_zeta_prime_zeros_in_box(double sigma_lo, double sigma_hi,
                                  double t_lo, double t_hi) {
  return winding_rectangle(sigma_lo, sigma_hi, t_lo, t_hi, 1e-10);
}

ScanResult find_zeta_prime_zeros(double t_lo, double t_hi, int workers) {
  if (!(t_lo >= 100.0 && t_lo < t_hi && t_hi <= kMaxHeight)) {
    throw std::invalid_argument("find_zeta_prime_zeros: need 100 <= t_lo < t_hi <= 1e4");
  }
  const double sigma_lo = 0.5 + 1e-6;  // never touch the critical line
  const double sigma_hi = 3.0;
  const int nboxes = static_cast<int>(std::ceil(t_hi - t_lo));
  std::vector<BoxScanState> states(static_cast<std::size_t>(nboxes));

  run_blocks(nboxes, workers, [&](int b) {
    double a = t_lo + b;
    double bb = std::min(t_lo + b + 1.0, t_hi);
    BoxScanState& st = states[static_cast<std::size_t>(b)];
    try {
      int count = winding_rectangle(sigma_lo, sigma_hi, a, bb, 1e-10);
      subdivide_box(sigma_lo, sigma_hi, a, bb, count, 0, st);
    } catch (const ContourResolutionError& e) {
      st.failures.push_back("box [" + std::to_string(a) + ", " + std::to_string(bb) +
                            "]: " + e.what());
    }
  });

  ScanResult result;
  result.manifest.t_lo = t_lo;
  result.manifest.t_hi = t_hi;
  result.manifest.box_count = nboxes;
  for (auto& st : states) {
    result.manifest.subdivisions += st.subdivisions;
    for (auto& f : st.failures) result.manifest.failures.push_back(std::move(f));
    result.zeros.insert(result.zeros.end(), st.zeros.begin(), st.zeros.end());
  }
  std::sort(result.zeros.begin(), result.zeros.end(),
            [](const ZetaPrimeZero& x, const ZetaPrimeZero& y) { return x.gamma < y.gamma; });
  result.manifest.zero_count = static_cast<std::int64_t>(result.zeros.size());
  if (!result.manifest.failures.empty()) {
    throw IncompleteScanError("zeta-prime scan incomplete: " +
                              result.manifest.failures.front() + " (" +
                              std::to_string(result.manifest.failures.size()) +
                              " failure(s))");
  }
  return result;
}

double predicted_x_from_gap(double theta, double alpha1) {
  if (!(theta >= 0.0 && theta < 1.0 / kPi)) {
    throw std::domain_error("predicted_x_from_gap: 0 <= theta < 1/pi required");
  }
  auto [b1, b2] = beta_coefficients(alpha1);
  double t2 = kPi * kPi * theta * theta;
  return b1 * t2 + b2 * t2 * t2;
}

EmpiricalDistribution normalized_distribution(const std::vector<ZetaPrimeZero>& zeros,
                                              std::vector<double> edges) {
  if (zeros.size() < 500) {
    throw std::invalid_argument("normalized_distribution: need at least 500 zeros");
  }
  auto hist = EmpiricalDistribution::with_edges(std::move(edges));
  hist.label = "zeta_prime_normalized_x";
  for (const auto& z : zeros) hist.add(z.normalized_x);
  return hist;
}

}  // namespace dzlab::zeta
