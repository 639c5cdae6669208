#include "dzlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dzlab {

double compensated_sum(std::span<const double> xs) {
  KahanAccumulator acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

Complex circle_point(double x, double n) {
  double t = kTwoPi * x / n;
  return {std::cos(t), std::sin(t)};
}

Complex one_minus_circle_point(double x, double n) {
  // 1 - e^{i t} = 2 sin(t/2) (sin(t/2) - i cos(t/2)) with t = 2 pi x / n.
  double h = kPi * x / n;
  double sh = std::sin(h);
  double ch = std::cos(h);
  return {2.0 * sh * sh, -2.0 * sh * ch};
}

Complex reciprocal_one_minus_circle_point(double x, double n) {
  double r = std::remainder(x, n);
  if (std::abs(r) < 1e-12) {
    throw std::domain_error("phase collides with z = 1 (x = 0 mod n)");
  }
  double h = kPi * r / n;
  return {0.5, 0.5 / std::tan(h)};
}

Complex reciprocal_one_minus_unit(double t) {
  double r = std::remainder(t, kTwoPi);
  if (std::abs(r) < 1e-12) {
    throw std::domain_error("phase collides with z = 1 (t = 0 mod 2 pi)");
  }
  return {0.5, 0.5 / std::tan(0.5 * r)};
}

double wrap_angle(double t) {
  double r = std::remainder(t, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb, double m, double fm, double whole,
                   double tol, int depth) {
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  // Split into unit-scale panels first so oscillatory integrands over long
  // ranges do not fool the error estimate.
  int panels = std::max(1, std::min(4096, static_cast<int>(std::ceil(std::abs(b - a)))));
  double h = (b - a) / panels;
  double tol = abs_tol / panels;
  KahanAccumulator total;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    double hi = (p == panels - 1) ? b : lo + h;
    double mid = 0.5 * (lo + hi);
    double flo = f(lo), fhi = f(hi), fmid = f(mid);
    double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total.add(simpson_rec(f, lo, flo, hi, fhi, mid, fmid, whole, tol, max_depth));
  }
  return total.value();
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace dzlab
