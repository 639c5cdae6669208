#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dzlab/histogram.hpp"
#include "dzlab/numerics.hpp"

namespace dzlab::zeta {

struct UnsupportedRange : std::runtime_error {
  explicit UnsupportedRange(const std::string& what) : std::runtime_error(what) {}
};

struct Values {
  Complex zeta;
  Complex dzeta;
  Complex d2zeta;
};

// Euler-Maclaurin evaluation of zeta and its first two derivatives, with
// Bernoulli corrections through B10 and a remainder estimate from the B12
// term. The term count starts at |Im s| + 20 and grows until the estimate
// meets target_abs_err. Heights above 1e4 are rejected.
Values zeta_and_derivatives(Complex s, double target_abs_err = 1e-11);
std::pair<Complex, Complex> zeta_and_derivative(Complex s, double target_abs_err = 1e-11);

// Densities per unit height: zeros of the derivative follow
// (1/2pi) log(t/4pi); zeros of zeta itself (1/2pi) log(t/2pi).
double zero_density(double t);
double zeta_zero_density(double t);
double integrated_zero_density(double a, double b);  // closed form for zero_density

double riemann_siegel_theta(double t);
double hardy_z(double t);

// Ordinates of critical-line zeta zeros in [t_lo, t_hi] via Hardy-Z sign
// changes, grid-refined until the count stabilizes, each bisected to ~1e-9.
std::vector<double> zeta_zero_ordinates(double t_lo, double t_hi);

struct ZetaPrimeZero {
  double beta = 0.0;   // Re s'
  double gamma = 0.0;  // Im s'
  double normalized_x = 0.0;  // (beta - 1/2) log(gamma / 2pi)
  double residual = 0.0;      // |zeta'(beta + i gamma)|
};

struct ScanManifest {
  double t_lo = 0.0, t_hi = 0.0;
  std::int64_t box_count = 0;
  std::int64_t subdivisions = 0;
  std::int64_t zero_count = 0;
  std::vector<std::string> failures;  // boxes abandoned after max subdivision
};

struct ScanResult {
  std::vector<ZetaPrimeZero> zeros;  // ordered by gamma
  ScanManifest manifest;
};

struct IncompleteScanError : std::runtime_error {
  explicit IncompleteScanError(const std::string& what) : std::runtime_error(what) {}
};

// All zeros of zeta' with 1/2 < sigma <= 3 and t in [t_lo, t_hi]:
// argument-principle counts on unit-height boxes, bisection to isolate,
// Newton refinement, completeness asserted per box. Requires
// 100 <= t_lo < t_hi <= 1e4.
ScanResult find_zeta_prime_zeros(double t_lo, double t_hi, int workers = 1);

// Argument-principle count of zeta' zeros in a rectangle (used by the scan
// and by spot checks of the sigma <= 3 cutoff).
int count_zeta_prime_zeros_in_box(double sigma_lo, double sigma_hi,
                                  double t_lo, double t_hi);

// Horizontal expansion prediction x = beta1 pi^2 theta^2 + beta2 pi^4 theta^4.
double predicted_x_from_gap(double theta, double alpha1);

// Histogram of normalized_x values; requires at least 500 zeros.
EmpiricalDistribution normalized_distribution(const std::vector<ZetaPrimeZero>& zeros,
                                              std::vector<double> edges);

}  // namespace dzlab::zeta
