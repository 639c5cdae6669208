#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dzlab/numerics.hpp"

namespace dzlab {

// A symmetric close pair at rescaled positions +-theta/2 plus n-2 background
// phases. Background positions live in (-n/2, -theta/2] u [theta/2, n/2).
struct PairConfig {
  int n = 0;
  double theta = 0.0;
  std::vector<double> background;  // rescaled positions

  PairConfig() = default;
  PairConfig(int n, double theta, std::vector<double> background);

  // Displacements 1 - r_k of all n roots from z = 1; pair endpoints first.
  std::vector<Complex> displacements() const;
};

// Logarithmic derivative f'/f of the degree-n polynomial with the pair's
// roots, evaluated at z = 1 - w. Also its z-derivative.
Complex log_deriv_sum(const std::vector<Complex>& displacements, Complex w);
std::pair<Complex, Complex> log_deriv_sum_and_derivative(
    const std::vector<Complex>& displacements, Complex w);

struct ContourResolutionError : std::runtime_error {
  explicit ContourResolutionError(const std::string& what) : std::runtime_error(what) {}
};

struct UniquenessViolation : std::runtime_error {
  UniquenessViolation(const std::string& what, PairConfig config, int count)
      : std::runtime_error(what), config(std::move(config)), count(count) {}
  PairConfig config;
  int count;
};

// One parametrized curve piece, t in [0, 1], in displacement coordinates.
struct ContourSegment {
  std::function<Complex(double)> point;
  int initial_samples = 16;
};

// Winding number of g around 0 along the closed curve formed by the
// segments, by adaptive phase tracking. Refinement splits any step whose
// phase increment exceeds max_step (default pi/4); if a step still exceeds
// pi/2 at the depth limit, ContourResolutionError is thrown.
int winding_number(const std::function<Complex(Complex)>& g,
                   const std::vector<ContourSegment>& segments,
                   double max_step = kPi / 4.0, int max_depth = 44);

struct PairContourOptions {
  // Bite radius; <= 0 selects eps0 / n with eps0 the minimal distance from
  // the pair endpoint to the other roots.
  double eps = 0.0;
  // Initial angular half-width of each bite on the main circle.
  double bite_angle = 1e-3;
  int max_depth = 44;
};

// Number of zeros of f' inside the pair disk (diameter between the two pair
// endpoints) with epsilon-notches removed at the endpoints, via the argument
// principle applied to f'/f. Requires theta > 0.
int count_roots_in_contour(const PairConfig& pair, PairContourOptions opts = {});

// Winding number of f'/f on an arbitrary rectangle in displacement
// coordinates (re/im bounds of w = 1 - z): zeros of f' minus zeros of f
// inside. Equals the f' zero count when the rectangle excludes the roots
// of f, as in the bisection fallback.
int count_roots_in_rectangle(const std::vector<Complex>& displacements,
                             double re_lo, double re_hi, double im_lo, double im_hi,
                             int max_depth = 44);

// The unique zero of f' in the open pair disk, as the displacement
// w = 1 - z'. Newton on f'/f from the chord midpoint with damping, a
// rectangle-subdivision fallback, then an argument-principle certificate
// (count must equal 1, else UniquenessViolation). theta = 0 short-circuits
// to the exact double root w = 0.
Complex root_in_disk(const PairConfig& pair);

// Close-pair sample: located root, complex displacement delta = n (1 - z'),
// its radial form delta*, and the first two background expansion sums.
struct PairSample {
  PairConfig config;
  Complex z_prime;
  Complex delta;
  double delta_star = 0.0;
  Complex a0;
  Complex a1;
};

PairSample resolve_pair(const PairConfig& pair);

// The ratio h(theta0; phi, psi) comparing one background reciprocal term
// against the pair term on the disk boundary, and its closed-form bound
// pi theta0 / n + 2 pi^2 (7 + 4 sqrt(3)) theta0^2 / n^2.
double eta_ratio(double theta0, double phi, double psi, int n);
double eta_ratio_bound(double theta0, int n);

}  // namespace dzlab
