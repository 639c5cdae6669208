#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace dzlab {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

using Complex = std::complex<double>;

// Compensated (Neumaier) summation.
class KahanAccumulator {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> xs);

// e^{2 pi i x / n}, the point on the unit circle at rescaled position x.
Complex circle_point(double x, double n);

// 1 - e^{2 pi i x / n} evaluated without cancellation near x = 0 (mod n).
Complex one_minus_circle_point(double x, double n);

// 1 / (1 - e^{2 pi i x / n}) = 1/2 + (i/2) cot(pi x / n).
// The real part is exactly 1/2 in floating point, which downstream
// identities rely on. Throws std::domain_error within 1e-12 of x = 0 mod n.
Complex reciprocal_one_minus_circle_point(double x, double n);

// 1 / (1 - e^{i t}) for a raw angle t; same half-angle form as above.
Complex reciprocal_one_minus_unit(double t);

// Wraps an angle into (-pi, pi].
double wrap_angle(double t);

// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth = 48);

// Two-sample Kolmogorov-Smirnov statistic; inputs need not be sorted.
double ks_statistic(std::vector<double> a, std::vector<double> b);

}  // namespace dzlab
