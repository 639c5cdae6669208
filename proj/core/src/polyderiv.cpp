#include "dzlab/polyderiv.hpp"

#include <cmath>
#include <stdexcept>

#include "dzlab/lapack_eig.hpp"
#include "dzlab/numerics.hpp"

namespace dzlab {

std::vector<std::complex<double>> char_poly_from_phases(const EigenphaseConfig& config) {
  const int n = config.n;
  if (n < 1) throw std::invalid_argument("char_poly: empty configuration");
  if (n > 512) {
    throw std::invalid_argument("char_poly: n > 512 rejected (coefficient conditioning guard)");
  }
  std::vector<Complex> coeffs;
  coeffs.reserve(static_cast<std::size_t>(n) + 1);
  coeffs.push_back({1.0, 0.0});
  for (double t : config.raw_phases) {
    Complex r{std::cos(t), std::sin(t)};
    coeffs.push_back(coeffs.back());
    for (std::size_t k = coeffs.size() - 2; k >= 1; --k) {
      coeffs[k] = coeffs[k - 1] - r * coeffs[k];
    }
    coeffs[0] *= -r;
  }
  return coeffs;
}

std::vector<std::complex<double>> differentiate(const std::vector<std::complex<double>>& coeffs) {
  if (coeffs.size() <= 1) return {Complex{0.0, 0.0}};
  std::vector<Complex> d(coeffs.size() - 1);
  for (std::size_t k = 0; k + 1 < coeffs.size(); ++k) {
    d[k] = static_cast<double>(k + 1) * coeffs[k + 1];
  }
  return d;
}

std::complex<double> horner(const std::vector<std::complex<double>>& coeffs,
                            std::complex<double> z) {
  Complex acc{0.0, 0.0};
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = acc * z + coeffs[k];
  }
  return acc;
}

double horner_magnitude(const std::vector<std::complex<double>>& coeffs,
                        std::complex<double> z) {
  double az = std::abs(z);
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = acc * az + std::abs(coeffs[k]);
  }
  return acc;
}

DerivRootSet deriv_roots_all(const EigenphaseConfig& config, double residual_tol) {
  const int n = config.n;
  if (n < 2) throw std::invalid_argument("deriv_roots_all: n >= 2 required");
  auto coeffs = char_poly_from_phases(config);
  auto deriv = differentiate(coeffs);
  auto second = differentiate(deriv);
  const int d = n - 1;

  // Companion matrix of the monic-normalized derivative. The leading
  // coefficient is exactly n.
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  Complex lead = deriv.back();
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -deriv[static_cast<std::size_t>(i)] / lead;
  std::vector<Complex> roots = eigenvalues_inplace(companion);

  DerivRootSet set;
  set.n = n;
  set.roots.resize(roots.size());
  set.s_values.resize(roots.size());
  set.flagged.assign(roots.size(), false);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    Complex z = roots[k];
    // One Newton polish step on the derivative polynomial.
    Complex p = horner(deriv, z);
    double scale = horner_magnitude(deriv, z);
    if (std::abs(p) > 1e-14 * scale) {
      Complex pp = horner(second, z);
      if (std::abs(pp) > 0.0) {
        Complex step = p / pp;
        if (std::abs(step) < 0.5) z -= step;
      }
      p = horner(deriv, z);
      scale = horner_magnitude(deriv, z);
    }
    if (std::abs(p) > residual_tol * scale) {
      set.flagged[k] = true;
      ++set.flagged_count;
    }
    set.roots[k] = z;
    set.s_values[k] = n * (1.0 - std::abs(z));
  }
  return set;
}

double delta_star_of(std::complex<double> delta, int n) {
  if (!(std::abs(delta) < static_cast<double>(n))) {
    throw std::domain_error("delta_star_of: |delta| < n required");
  }
  return n * (1.0 - std::abs(1.0 - delta / static_cast<double>(n)));
}

double max_re_reciprocal_bound(std::complex<double> z) {
  double r2 = std::norm(z);
  if (!(r2 < 1.0)) throw std::domain_error("max_re_reciprocal_bound: |z| < 1 required");
  return (1.0 - z.real()) / (1.0 - r2);
}

}  // namespace dzlab
