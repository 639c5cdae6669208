#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dzlab/numerics.hpp"

namespace dzlab {

// Normalized reciprocal power sums of a background configuration,
//   A_j = n^{-(j-1)-2} sum_k (1 - e^{2 pi i x_k / n})^{-(j+1)},  j = 0..j_max.
// Positions are rescaled (units of n). Throws std::domain_error if any
// position is within 1e-12 of 0 mod n. Re A_0 = (n-2)/(2n) identically when
// the background has n-2 entries.
std::vector<Complex> compute_aj(std::span<const double> background, int n, int j_max);

// Quadratic/quartic displacement coefficients of the close-pair root:
//   b1 = A_0/2 + 1/(2n),
//   b2 = (A_0^3 + 2 A_0 A_1)/8 + A_1/(4n) - A_0/(6n^2) - 1/(24n^3).
// Re b1 = 1/4 for every configuration.
std::pair<Complex, Complex> coeff_b(Complex a0, Complex a1, int n);

struct PairCoefficients {
  std::vector<Complex> a;  // A_0..A_{j_max}
  Complex b1, b2;
  double big_b1 = 0.0;  // Re b1
  double big_b2 = 0.0;  // Re b2
  int n = 0;
};

PairCoefficients expansion_coefficients(std::span<const double> background, int n,
                                        int j_max = 1);

// Two-term displacement prediction b1 pi^2 theta^2 + b2 pi^4 theta^4.
Complex predict_delta(Complex b1, Complex b2, double theta);

// Small-s expansion of the nearest-neighbor spacing density at dimension n
// (three displayed terms). Valid for 0 <= s <= 0.5; out of range throws.
// n is a double so the n -> infinity limit can be probed directly.
double spacing_density_p2(double s, double n);

// Term-by-term integral of the same truncation, P(theta <= s).
double spacing_cdf_p2(double s, double n);

enum class QRegime { kSmall, kLarge };

// Limiting radial density of S: (4/(3 pi)) sqrt(s) - (82/(45 pi)) s^{3/2}
// for the small-s regime, 1/s^2 for the large-s regime.
double q_asymptotics(double s, QRegime regime);

// Radial density of delta* at dimension n with B1 = 1/4 and B2 replaced by
// b2_mean, including the displayed 1/n^2 and 1/n^4 corrections.
double deldist_density(double s, double n, double b2_mean);

// Conditioned-ensemble moment closed forms at dimension n (raw convention:
// the cubic/product moments are of the unnormalized sums n^{j+1} A_j).
struct MomentPolynomials {
  int n = 0;
  double c_n_inv = 0.0;     // <|Lambda(1)|^4> on the (n-2)-dimensional group
  double a0_mean = 0.0;     // <A_0> = 1/2 - 1/n
  double a0_cubed = 0.0;    // <(n A_0)^3>
  double a1_mean = 0.0;     // <n^2 A_1>
  double a0a1_mean = 0.0;   // <n^3 A_0 A_1>
  double b2_mean = 0.0;     // Re<b_2> assembled from the four moments
};

MomentPolynomials moment_polynomials(int n);

// Quadratic/quartic coefficients for the zeta-side expansion:
// beta1 = 1/4, beta2 = 1/64 - alpha1/8.
std::pair<double, double> beta_coefficients(double alpha1);

// Bessel function of the first kind at half-integer order num/2 for
// num in {-1, 1, 3, 5}, via the spherical closed forms with an ascending
// series fallback at small argument. Relative accuracy 1e-12 on
// [1e-6, 1e4]. Requires x > 0.
double bessel_half_integer(int num, double x);

// Limiting rescaled 1-level density under the a-fold conditioning,
//   W1(t) = t (pi^2/2) (J_{a-1/2}(pi t)^2 + J_{a+1/2}(pi t)^2)
//           - a pi J_{a-1/2}(pi t) J_{a+1/2}(pi t),
// extended evenly to negative t. a in {0, 1, 2}.
double one_level_density_w1(int a, double t);

// Limiting kernel; the diagonal is taken over from one_level_density_w1
// when |xi - eta| < 1e-8 (cancellation switchover).
Complex kernel_k_infty(int a, double xi, double eta);

}  // namespace dzlab
