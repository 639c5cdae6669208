#include <cmath>
#include <stdexcept>

#include "dzlab/expansions.hpp"

namespace dzlab {

namespace {

// Ascending series sum_m (-1)^m / (m! Gamma(m + nu + 1)) (x/2)^{2m + nu},
// used below the cancellation threshold of the closed forms.
double bessel_series(double nu, double x) {
  double half = 0.5 * x;
  double term = std::pow(half, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  double q = half * half;
  for (int m = 1; m <= 60; ++m) {
    term *= -q / (m * (m + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double bessel_half_integer(int num, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_half_integer: x > 0 required");
  const double pref = std::sqrt(2.0 / (kPi * x));
  switch (num) {
    case -1:
      return pref * std::cos(x);
    case 1:
      return pref * std::sin(x);
    case 3: {
      // sin(x)/x - cos(x) cancels below x ~ 0.1; switch to the series.
      if (x < 0.5) return bessel_series(1.5, x);
      return pref * (std::sin(x) / x - std::cos(x));
    }
    case 5: {
      if (x < 0.5) return bessel_series(2.5, x);
      double inv = 1.0 / x;
      return pref * ((3.0 * inv * inv - 1.0) * std::sin(x) - 3.0 * inv * std::cos(x));
    }
    default:
      throw std::invalid_argument("bessel_half_integer: order num/2 with num in {-1,1,3,5}");
  }
}

double one_level_density_w1(int a, double t) {
  if (a < 0 || a > 2) throw std::invalid_argument("one_level_density_w1: a in {0, 1, 2}");
  t = std::abs(t);  // even extension
  if (t == 0.0) return a == 0 ? 1.0 : 0.0;
  double x = kPi * t;
  double jm = bessel_half_integer(2 * a - 1, x);
  double jp = bessel_half_integer(2 * a + 1, x);
  return t * (kPi * kPi / 2.0) * (jm * jm + jp * jp) - a * kPi * jm * jp;
}

Complex kernel_k_infty(int a, double xi, double eta) {
  if (a < 0 || a > 2) throw std::invalid_argument("kernel_k_infty: a in {0, 1, 2}");
  if (std::abs(xi - eta) < 1e-8) {
    // Difference-quotient cancellation exceeds the diagonal's accuracy here.
    return Complex{one_level_density_w1(a, 0.5 * (xi + eta)), 0.0};
  }
  double axi = std::abs(xi), aeta = std::abs(eta);
  if (axi == 0.0 || aeta == 0.0) return Complex{0.0, 0.0};
  double jp_xi = bessel_half_integer(2 * a + 1, kPi * axi);
  double jm_xi = bessel_half_integer(2 * a - 1, kPi * axi);
  double jp_eta = bessel_half_integer(2 * a + 1, kPi * aeta);
  double jm_eta = bessel_half_integer(2 * a - 1, kPi * aeta);
  double cross = jp_xi * jm_eta - jm_xi * jp_eta;
  Complex phase = std::polar(1.0, kPi * (eta - xi));
  return phase * (kPi / 2.0) * std::sqrt(axi * aeta) / (xi - eta) * cross;
}

}  // namespace dzlab
