#pragma once

#include <complex>
#include <vector>

#include "dzlab/ensembles.hpp"

namespace dzlab {

// Coefficients of the monic characteristic polynomial prod_j (z - e^{i t_j}),
// ascending powers: coeffs[k] multiplies z^k and coeffs[n] == 1.
// Throws std::invalid_argument for n > 512 (conditioning guard).
std::vector<std::complex<double>> char_poly_from_phases(const EigenphaseConfig& config);

// d/dz of an ascending coefficient list.
std::vector<std::complex<double>> differentiate(const std::vector<std::complex<double>>& coeffs);

// Horner evaluation; also the magnitude bound sum_k |c_k| |z|^k used for
// relative residual checks.
std::complex<double> horner(const std::vector<std::complex<double>>& coeffs,
                            std::complex<double> z);
double horner_magnitude(const std::vector<std::complex<double>>& coeffs,
                        std::complex<double> z);

// The n-1 zeros of the derivative of the characteristic polynomial, with
// their rescaled radial distances S = n (1 - |z'|).
//
// Roots come from the companion matrix of the differentiated coefficient
// list, then one Newton step on the derivative polynomial. Roots whose
// relative residual stays above `residual_tol` are flagged; flagged roots are
// kept in the arrays but excluded from downstream statistics.
struct DerivRootSet {
  int n = 0;
  std::vector<std::complex<double>> roots;
  std::vector<double> s_values;
  std::vector<bool> flagged;
  int flagged_count = 0;
};

DerivRootSet deriv_roots_all(const EigenphaseConfig& config, double residual_tol = 1e-9);

// n (1 - |1 - delta/n|), the radial rescaled distance expressed through the
// complex displacement delta = n (1 - z'). Computed directly, not via the
// truncated quadratic expansion. Requires |delta| < n.
double delta_star_of(std::complex<double> delta, int n);

// max over |zeta| = 1 of Re 1/(z - zeta), which equals (1 - Re z)/(1 - |z|^2).
// Domain: |z| < 1.
double max_re_reciprocal_bound(std::complex<double> z);

}  // namespace dzlab
