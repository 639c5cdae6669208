#include "dzlab/expansions.hpp"

#include <cmath>
#include <stdexcept>

namespace dzlab {

std::vector<Complex> compute_aj(std::span<const double> background, int n, int j_max) {
  if (j_max < 0 || j_max > 4) throw std::invalid_argument("compute_aj: j_max in [0, 4]");
  std::vector<Complex> sums(static_cast<std::size_t>(j_max) + 1, Complex{0.0, 0.0});
  for (double x : background) {
    Complex u = reciprocal_one_minus_circle_point(x, n);
    Complex pw = u;
    for (int j = 0; j <= j_max; ++j) {
      sums[static_cast<std::size_t>(j)] += pw;
      pw *= u;
    }
  }
  double scale = 1.0 / n;
  for (int j = 0; j <= j_max; ++j) {
    sums[static_cast<std::size_t>(j)] *= scale;
    scale /= n;
  }
  return sums;
}

std::pair<Complex, Complex> coeff_b(Complex a0, Complex a1, int n) {
  double nn = static_cast<double>(n);
  Complex b1 = a0 / 2.0 + 1.0 / (2.0 * nn);
  Complex b2 = (a0 * a0 * a0 + 2.0 * a0 * a1) / 8.0 + a1 / (4.0 * nn) -
               a0 / (6.0 * nn * nn) - 1.0 / (24.0 * nn * nn * nn);
  return {b1, b2};
}

PairCoefficients expansion_coefficients(std::span<const double> background, int n,
                                        int j_max) {
  PairCoefficients out;
  out.n = n;
  out.a = compute_aj(background, n, std::max(1, j_max));
  auto [b1, b2] = coeff_b(out.a[0], out.a[1], n);
  out.b1 = b1;
  out.b2 = b2;
  out.big_b1 = b1.real();
  out.big_b2 = b2.real();
  return out;
}

Complex predict_delta(Complex b1, Complex b2, double theta) {
  if (!(theta < 1.0 / kPi)) throw std::domain_error("predict_delta: theta < 1/pi required");
  double t2 = kPi * kPi * theta * theta;
  return b1 * t2 + b2 * t2 * t2;
}

double spacing_density_p2(double s, double n) {
  if (!(s >= 0.0 && s <= 0.5)) {
    throw std::domain_error("spacing_density_p2: truncation valid only for 0 <= s <= 0.5");
  }
  double n2 = n * n, n4 = n2 * n2, n6 = n4 * n2;
  double c2 = (1.0 / 3.0 - 1.0 / (3.0 * n2));
  double c4 = (2.0 / 45.0 - 1.0 / (9.0 * n2) + 1.0 / (15.0 * n4));
  double c6 = (1.0 / 315.0 - 2.0 / (135.0 * n2) + 1.0 / (45.0 * n4) - 2.0 / (189.0 * n6));
  double p2 = kPi * kPi, p4 = p2 * p2, p6 = p4 * p2;
  double s2 = s * s;
  return c2 * p2 * s2 - c4 * p4 * s2 * s2 + c6 * p6 * s2 * s2 * s2;
}

double spacing_cdf_p2(double s, double n) {
  if (!(s >= 0.0 && s <= 0.5)) {
    throw std::domain_error("spacing_cdf_p2: truncation valid only for 0 <= s <= 0.5");
  }
  double n2 = n * n, n4 = n2 * n2, n6 = n4 * n2;
  double c2 = (1.0 / 3.0 - 1.0 / (3.0 * n2));
  double c4 = (2.0 / 45.0 - 1.0 / (9.0 * n2) + 1.0 / (15.0 * n4));
  double c6 = (1.0 / 315.0 - 2.0 / (135.0 * n2) + 1.0 / (45.0 * n4) - 2.0 / (189.0 * n6));
  double p2 = kPi * kPi, p4 = p2 * p2, p6 = p4 * p2;
  double s3 = s * s * s;
  double s5 = s3 * s * s;
  double s7 = s5 * s * s;
  return c2 * p2 * s3 / 3.0 - c4 * p4 * s5 / 5.0 + c6 * p6 * s7 / 7.0;
}

double q_asymptotics(double s, QRegime regime) {
  if (!(s > 0.0)) throw std::domain_error("q_asymptotics: s > 0 required");
  if (regime == QRegime::kLarge) return 1.0 / (s * s);
  double r = std::sqrt(s);
  return (4.0 / (3.0 * kPi)) * r - (82.0 / (45.0 * kPi)) * r * s;
}

double deldist_density(double s, double n, double b2_mean) {
  if (!(s > 0.0)) throw std::domain_error("deldist_density: s > 0 required");
  const double b1 = 0.25;
  double n2 = n * n, n4 = n2 * n2;
  double lead = std::pow(b1, -1.5) / (6.0 * kPi) * (1.0 - 1.0 / n2);
  double sub = (std::pow(b1, -2.5) / 45.0) * (1.0 - 2.5 / n2 + 1.5 / n4) +
               (5.0 * std::pow(b1, -3.5) * b2_mean / 12.0) * (1.0 - 1.0 / n2);
  double r = std::sqrt(s);
  return lead * r - (sub / kPi) * r * s;
}

MomentPolynomials moment_polynomials(int n) {
  if (n < 4) throw std::invalid_argument("moment_polynomials: n >= 4 required");
  MomentPolynomials m;
  m.n = n;
  double nn = static_cast<double>(n);
  double n2 = nn * nn, n3 = n2 * nn, n4 = n2 * n2;
  m.c_n_inv = n4 / 12.0 - n2 / 12.0;
  m.a0_mean = 0.5 - 1.0 / nn;
  m.a0_cubed = n3 / 10.0 - 7.0 * n2 / 10.0 + 8.0 * nn / 5.0 - 6.0 / 5.0;
  m.a1_mean = n2 / 15.0 - nn / 2.0 + 11.0 / 15.0;
  m.a0a1_mean = n3 / 30.0 - 3.0 * n2 / 10.0 + 13.0 * nn / 15.0 - 4.0 / 5.0;
  m.b2_mean = (m.a0_cubed + 2.0 * m.a0a1_mean) / (8.0 * n3) + m.a1_mean / (4.0 * n3) -
              m.a0_mean / (6.0 * n2) - 1.0 / (24.0 * n3);
  return m;
}

std::pair<double, double> beta_coefficients(double alpha1) {
  return {0.25, 1.0 / 64.0 - alpha1 / 8.0};
}

}  // namespace dzlab
