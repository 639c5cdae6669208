#include "dzlab/contour.hpp"

#include <algorithm>
#include <cmath>

#include "dzlab/expansions.hpp"
#include "dzlab/polyderiv.hpp"

namespace dzlab {

namespace {

// Displacement of the point at rescaled position x from z = 1, computed via
// half-angle identities so small positions keep full relative precision.
Complex displacement_of(double x, double n) {
  double h = kPi * x / n;
  double sh = std::sin(h);
  double ch = std::cos(h);
  return {2.0 * sh * sh, -2.0 * sh * ch};
}

}  // namespace

PairConfig::PairConfig(int n_in, double theta_in, std::vector<double> background_in)
    : n(n_in), theta(theta_in), background(std::move(background_in)) {
  if (n < 2) throw std::invalid_argument("PairConfig: n >= 2 required");
  if (!(theta >= 0.0) || !(theta < 1.0 / kPi)) {
    throw std::invalid_argument("PairConfig: 0 <= theta < 1/pi required");
  }
  if (background.size() != static_cast<std::size_t>(n - 2)) {
    throw std::invalid_argument("PairConfig: need exactly n - 2 background phases");
  }
  for (double x : background) {
    if (std::abs(x) < theta / 2.0 - 1e-12 || std::abs(x) > n / 2.0 + 1e-12) {
      throw std::invalid_argument("PairConfig: background phase outside admissible window");
    }
  }
}

std::vector<Complex> PairConfig::displacements() const {
  std::vector<Complex> u;
  u.reserve(static_cast<std::size_t>(n));
  u.push_back(displacement_of(theta / 2.0, n));
  u.push_back(displacement_of(-theta / 2.0, n));
  for (double x : background) u.push_back(displacement_of(x, n));
  return u;
}

Complex log_deriv_sum(const std::vector<Complex>& displacements, Complex w) {
  Complex acc{0.0, 0.0};
  for (const Complex& u : displacements) acc += 1.0 / (u - w);
  return acc;
}

std::pair<Complex, Complex> log_deriv_sum_and_derivative(
    const std::vector<Complex>& displacements, Complex w) {
  Complex s{0.0, 0.0}, sp{0.0, 0.0};
  for (const Complex& u : displacements) {
    Complex inv = 1.0 / (u - w);
    s += inv;
    sp -= inv * inv;  // d/dz of 1/(z - r) at z = 1 - w
  }
  return {s, sp};
}

namespace {

struct PhaseTracker {
  const std::function<Complex(Complex)>& g;
  double max_step;
  int max_depth;
  KahanAccumulator total;

  double step(Complex w0, Complex g0, Complex w1, Complex g1,
              const std::function<Complex(double)>& param, double t0, double t1,
              int depth) {
    if (g0 == Complex{0.0, 0.0} || g1 == Complex{0.0, 0.0}) {
      throw ContourResolutionError("winding_number: zero on contour");
    }
    double dphi = std::arg(g1 / g0);
    if (std::abs(dphi) <= max_step) return dphi;
    if (depth >= max_depth) {
      if (std::abs(dphi) <= kPi / 2.0) return dphi;
      throw ContourResolutionError("winding_number: phase step above pi/2 at max refinement");
    }
    double tm = 0.5 * (t0 + t1);
    Complex wm = param(tm);
    Complex gm = g(wm);
    return step(w0, g0, wm, gm, param, t0, tm, depth + 1) +
           step(wm, gm, w1, g1, param, tm, t1, depth + 1);
  }
};

}  // namespace

int winding_number(const std::function<Complex(Complex)>& g,
                   const std::vector<ContourSegment>& segments,
                   double max_step, int max_depth) {
  PhaseTracker tracker{g, max_step, max_depth, {}};
  Complex first_w, first_g, prev_w, prev_g;
  bool have_first = false;
  for (const auto& seg : segments) {
    int m = std::max(2, seg.initial_samples);
    for (int i = 0; i <= m; ++i) {
      double t = static_cast<double>(i) / m;
      Complex w = seg.point(t);
      Complex gv = g(w);
      if (!have_first) {
        first_w = prev_w = w;
        first_g = prev_g = gv;
        have_first = true;
        continue;
      }
      if (i == 0) continue;  // segment start coincides with previous end
      double t0 = static_cast<double>(i - 1) / m;
      tracker.total.add(tracker.step(prev_w, prev_g, w, gv, seg.point, t0, t, 0));
      prev_w = w;
      prev_g = gv;
    }
  }
  // Close the curve back to the first sample.
  if (std::abs(prev_w - first_w) > 1e-9 * (std::abs(first_w) + 1.0)) {
    auto line = [&](double t) { return prev_w + t * (first_w - prev_w); };
    tracker.total.add(tracker.step(prev_w, prev_g, first_w, first_g, line, 0.0, 1.0, 0));
  }
  double turns = tracker.total.value() / kTwoPi;
  double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-2) {
    throw ContourResolutionError("winding_number: non-integer winding " + std::to_string(turns));
  }
  return static_cast<int>(rounded);
}

namespace {

struct PairGeometry {
  std::vector<Complex> u;  // displacements, pair endpoints first
  double alpha = 0.0;      // angle of the pair endpoint, 2 pi theta0 / n
  double s = 0.0;          // disk radius sin(alpha)
  double wc = 0.0;         // disk center displacement 1 - cos(alpha)
  Complex u_plus, u_minus;
  double eps0 = 0.0;       // min distance from e(theta0) to the other roots
};

PairGeometry pair_geometry(const PairConfig& pair) {
  PairGeometry geo;
  geo.u = pair.displacements();
  double theta0 = pair.theta / 2.0;
  geo.alpha = kTwoPi * theta0 / pair.n;
  geo.s = std::sin(geo.alpha);
  double sh = std::sin(0.5 * geo.alpha);
  geo.wc = 2.0 * sh * sh;
  geo.u_plus = geo.u[0];
  geo.u_minus = geo.u[1];
  geo.eps0 = std::abs(geo.u_plus - geo.u_minus);
  for (std::size_t k = 2; k < geo.u.size(); ++k) {
    geo.eps0 = std::min(geo.eps0, std::abs(geo.u[k] - geo.u_plus));
  }
  return geo;
}

// Arc on the circle |w - center| = r from angle a sweeping `sweep`.
ContourSegment arc_segment(Complex center, double r, double a, double sweep, int samples) {
  return {[=](double t) {
            double ang = a + sweep * t;
            return center + Complex{r * std::cos(ang), r * std::sin(ang)};
          },
          samples};
}

// Chooses the sweep from angle a to angle b (mod 2pi) whose midpoint heads
// toward `target_mid`; used to route bite arcs through the disk interior.
double directed_sweep(double a, double b, double target_mid) {
  double fwd = std::remainder(b - a, kTwoPi);
  double alt = fwd > 0 ? fwd - kTwoPi : fwd + kTwoPi;
  double mid_fwd = std::remainder(a + 0.5 * fwd - target_mid, kTwoPi);
  double mid_alt = std::remainder(a + 0.5 * alt - target_mid, kTwoPi);
  return std::abs(mid_fwd) <= std::abs(mid_alt) ? fwd : alt;
}

std::vector<ContourSegment> notched_disk_segments(const PairGeometry& geo,
                                                  double eps, double bite_angle) {
  const double s = geo.s;
  const Complex wc{geo.wc, 0.0};
  // Main circle in displacement coordinates: w(phi) = wc - i s e^{i phi}.
  auto main_point = [=](double phi) {
    return wc - Complex{0.0, 1.0} * std::polar(s, phi);
  };
  double trim = std::max(2.0 * std::asin(std::min(1.0, eps / (2.0 * s))), bite_angle);
  if (trim > kPi / 3.0) {
    throw ContourResolutionError("notched disk: bite exceeds a third of the circle");
  }
  double eps_eff = 2.0 * s * std::sin(0.5 * trim);

  Complex a0 = main_point(-kPi + trim);  // after lower bite
  Complex a1 = main_point(-trim);        // before upper bite
  Complex b0 = main_point(trim);         // after upper bite
  Complex b1 = main_point(kPi - trim);   // before lower bite

  std::vector<ContourSegment> segs;
  segs.push_back({[=](double t) { return main_point(-kPi + trim + t * (kPi - 2.0 * trim)); }, 24});
  double sweep_up = directed_sweep(std::arg(a1 - geo.u_plus), std::arg(b0 - geo.u_plus),
                                   std::arg(wc - geo.u_plus));
  segs.push_back(arc_segment(geo.u_plus, eps_eff, std::arg(a1 - geo.u_plus), sweep_up, 12));
  segs.push_back({[=](double t) { return main_point(trim + t * (kPi - 2.0 * trim)); }, 24});
  double sweep_dn = directed_sweep(std::arg(b1 - geo.u_minus), std::arg(a0 - geo.u_minus),
                                   std::arg(wc - geo.u_minus));
  segs.push_back(arc_segment(geo.u_minus, eps_eff, std::arg(b1 - geo.u_minus), sweep_dn, 12));
  return segs;
}

// Distance from every root to the contour circles must stay above a fraction
// of the bite radius for stable phase tracking.
bool contour_clear_of_roots(const PairGeometry& geo, double eps_eff) {
  const Complex wc{geo.wc, 0.0};
  for (std::size_t k = 0; k < geo.u.size(); ++k) {
    double d_plus = std::abs(std::abs(geo.u[k] - geo.u_plus) - eps_eff);
    double d_minus = std::abs(std::abs(geo.u[k] - geo.u_minus) - eps_eff);
    double d = std::min(d_plus, d_minus);
    if (k >= 2) {
      // Background roots sit on the unit circle outside the disk; only the
      // ones near the trim region approach the main circle.
      double d_main = std::abs(std::abs(geo.u[k] - wc) - geo.s);
      if (std::abs(geo.u[k] - geo.u_plus) > eps_eff &&
          std::abs(geo.u[k] - geo.u_minus) > eps_eff) {
        d = std::min(d, d_main);
      }
    }
    if (d < 0.2 * eps_eff) return false;
  }
  return true;
}

int count_with_geometry(const PairGeometry& geo, PairContourOptions opts) {
  if (!(geo.s > 0.0)) {
    throw std::invalid_argument("count_roots_in_contour: theta > 0 required");
  }
  double eps = opts.eps > 0.0 ? opts.eps : geo.eps0 / static_cast<double>(geo.u.size());
  double bite = opts.bite_angle;
  auto g = [&geo](Complex w) { return log_deriv_sum(geo.u, w); };
  for (int attempt = 0; attempt < 6; ++attempt) {
    double trim = std::max(2.0 * std::asin(std::min(1.0, eps / (2.0 * geo.s))), bite);
    double eps_eff = 2.0 * geo.s * std::sin(0.5 * trim);
    if (contour_clear_of_roots(geo, eps_eff)) {
      auto segs = notched_disk_segments(geo, eps, bite);
      return winding_number(g, segs, kPi / 4.0, opts.max_depth);
    }
    bite = std::max(trim, bite) * 1.6;  // widen the notch past the offending root
  }
  throw ContourResolutionError("count_roots_in_contour: could not clear roots off the contour");
}

}  // namespace

int count_roots_in_contour(const PairConfig& pair, PairContourOptions opts) {
  return count_with_geometry(pair_geometry(pair), opts);
}

int count_roots_in_rectangle(const std::vector<Complex>& displacements,
                             double re_lo, double re_hi, double im_lo, double im_hi,
                             int max_depth) {
  Complex c00{re_lo, im_lo}, c10{re_hi, im_lo}, c11{re_hi, im_hi}, c01{re_lo, im_hi};
  // Counterclockwise in z is clockwise in w = 1 - z only up to the sign of
  // the affine map; w = 1 - z rotates by pi, so orientation is preserved.
  auto line = [](Complex a, Complex b) {
    return ContourSegment{[=](double t) { return a + t * (b - a); }, 8};
  };
  std::vector<ContourSegment> segs{line(c00, c10), line(c10, c11), line(c11, c01), line(c01, c00)};
  auto g = [&displacements](Complex w) { return log_deriv_sum(displacements, w); };
  return winding_number(g, segs, kPi / 4.0, max_depth);
}

namespace {

std::optional<Complex> newton_in_disk(const PairGeometry& geo, Complex w_start) {
  const Complex wc{geo.wc, 0.0};
  Complex w = w_start;
  for (int it = 0; it < 80; ++it) {
    auto [s, sp] = log_deriv_sum_and_derivative(geo.u, w);
    Complex denom = s * s + sp;
    if (denom == Complex{0.0, 0.0}) return std::nullopt;
    Complex step = s / denom;
    // Damp any step that would leave the (slightly enlarged) disk.
    double damp = 1.0;
    for (int h = 0; h < 40 && std::abs(w + damp * step - wc) > geo.s * (1.0 + 1e-9); ++h) {
      damp *= 0.5;
    }
    Complex w_next = w + damp * step;
    if (std::abs(w_next - wc) > geo.s * (1.0 + 1e-9)) return std::nullopt;
    double move = std::abs(w_next - w);
    w = w_next;
    if (move <= 1e-15 * std::max(std::abs(w), geo.wc + geo.s)) {
      return w;
    }
  }
  return std::nullopt;
}

Complex bisection_fallback(const PairGeometry& geo) {
  // Count boxes over the disk's bounding box, descending into the unique
  // populated box.
  double re_lo = geo.wc - geo.s * 1.0000001, re_hi = geo.wc + geo.s * 1.0000001;
  double im_lo = -geo.s * 1.0000001, im_hi = geo.s * 1.0000001;
  for (int depth = 0; depth < 60; ++depth) {
    double re_m = 0.5 * (re_lo + re_hi);
    double im_m = 0.5 * (im_lo + im_hi);
    if (re_hi - re_lo < 1e-13 * std::max(1.0, geo.s)) break;
    bool found = false;
    const double boxes[4][4] = {{re_lo, re_m, im_lo, im_m},
                                {re_m, re_hi, im_lo, im_m},
                                {re_lo, re_m, im_m, im_hi},
                                {re_m, re_hi, im_m, im_hi}};
    for (const auto& b : boxes) {
      int c;
      try {
        c = count_roots_in_rectangle(geo.u, b[0], b[1], b[2], b[3]);
      } catch (const ContourResolutionError&) {
        continue;  // root on a split line; the sibling box will catch it
      }
      if (c >= 1) {
        re_lo = b[0]; re_hi = b[1]; im_lo = b[2]; im_hi = b[3];
        found = true;
        break;
      }
    }
    if (!found) break;
  }
  Complex center{0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)};
  if (auto w = newton_in_disk(geo, center)) return *w;
  throw ContourResolutionError("root_in_disk: bisection fallback failed to converge");
}

}  // namespace

Complex root_in_disk(const PairConfig& pair) {
  if (pair.theta == 0.0) return Complex{0.0, 0.0};  // exact double root at z = 1
  PairGeometry geo = pair_geometry(pair);
  const Complex wc{geo.wc, 0.0};
  auto interior = [&](Complex w) { return std::abs(w - wc) < geo.s - 1e-12; };

  std::optional<Complex> w = newton_in_disk(geo, wc);
  if (!w || !interior(*w)) {
    w = bisection_fallback(geo);
  }
  int count = count_with_geometry(geo, {});
  if (count != 1) {
    throw UniquenessViolation("root_in_disk: argument-principle count is " +
                              std::to_string(count), pair, count);
  }
  if (!interior(*w)) {
    throw ContourResolutionError("root_in_disk: converged root not interior to the pair disk");
  }
  return *w;
}

PairSample resolve_pair(const PairConfig& pair) {
  PairSample sample;
  sample.config = pair;
  Complex w = root_in_disk(pair);
  sample.z_prime = Complex{1.0, 0.0} - w;
  sample.delta = static_cast<double>(pair.n) * w;
  sample.delta_star = pair.theta == 0.0
                          ? 0.0
                          : delta_star_of(sample.delta, pair.n);
  auto a = compute_aj(sample.config.background, pair.n, 1);
  sample.a0 = a[0];
  sample.a1 = a[1];
  return sample;
}

double eta_ratio(double theta0, double phi, double psi, int n) {
  double alpha = kTwoPi * theta0 / n;
  double c = std::cos(alpha), s = std::sin(alpha);
  Complex z = Complex{c, 0.0} + Complex{0.0, 1.0} * std::polar(s, phi);
  Complex e = circle_point(psi, n);
  Complex recip = 1.0 / (z - e);
  return s * std::sin(phi) * recip.real();
}

double eta_ratio_bound(double theta0, int n) {
  double t = theta0 / n;
  return kPi * t + 2.0 * kPi * kPi * (7.0 + 4.0 * std::sqrt(3.0)) * t * t;
}

}  // namespace dzlab
