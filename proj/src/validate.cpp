#include "qtm/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qtm {

RectangularWellSpec::RectangularWellSpec(double v, double w, double m, double hb)
    : depth(v), width(w), mass(m), hbar(hb) {
  if (!(v > 0.0)) throw std::domain_error("rectangular well: depth must be positive");
  if (!(w > 0.0)) throw std::domain_error("rectangular well: width must be positive");
  if (!(m > 0.0) || !(hb > 0.0)) {
    throw std::domain_error("rectangular well: mass and hbar must be positive");
  }
}

namespace {

double bisect(const std::function<double(double)>& f, double a, double b, double fa) {
  for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fa * fm <= 0.0) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> rect_well_eigenvalues(const RectangularWellSpec& spec) {
  const double pi = std::numbers::pi;
  const double half = spec.width / 2.0;
  const double z0 = std::sqrt(2.0 * spec.mass * spec.depth) * half / spec.hbar;
  const auto rhs = [z0](double z) { return std::sqrt(std::max(z0 * z0 - z * z, 0.0)); };
  const std::function<double(double)> f_even = [&](double z) {
    return z * std::tan(z) - rhs(z);
  };
  const std::function<double(double)> f_odd = [&](double z) {
    return -z / std::tan(z) - rhs(z);
  };

  std::vector<double> zs;
  const double pad = 1e-12 * std::max(1.0, z0);
  for (int j = 0;; ++j) {
    // even branch: z in [j pi, j pi + pi/2), f goes from -z0-ish to +inf
    const double e_lo = j * pi;
    if (e_lo >= z0) break;
    const double e_hi = std::min(e_lo + pi / 2.0 - 1e-12, z0 - pad);
    if (e_hi > e_lo + pad && f_even(e_hi) > 0.0) {
      zs.push_back(bisect(f_even, e_lo + pad, e_hi, f_even(e_lo + pad)));
    }
    // odd branch: z in [j pi + pi/2, (j+1) pi)
    const double o_lo = j * pi + pi / 2.0;
    if (o_lo >= z0) continue;
    const double o_hi = std::min((j + 1) * pi - 1e-12, z0 - pad);
    if (o_hi > o_lo + pad && f_odd(o_hi) > 0.0) {
      zs.push_back(bisect(f_odd, o_lo + pad, o_hi, f_odd(o_lo + pad)));
    }
  }
  std::sort(zs.begin(), zs.end());
  std::vector<double> energies;
  energies.reserve(zs.size());
  for (double z : zs) {
    const double k = 2.0 * z / spec.width;
    energies.push_back(spec.hbar * spec.hbar * k * k / (2.0 * spec.mass));
  }
  return energies;
}

namespace {

// Number of eigenvalues of the symmetric tridiagonal (diag, off) below lambda,
// by the Sturm-sequence (LDL^T pivot sign) count.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double lambda) {
  int count = 0;
  double q = diag[0] - lambda;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    const double denom = (q == 0.0) ? 1e-300 : q;
    q = diag[i] - lambda - off[i - 1] * off[i - 1] / denom;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> tridiag_eigens_below(const std::vector<double>& diag,
                                         const std::vector<double>& off, double lo, double hi) {
  const int total = sturm_count(diag, off, hi) - sturm_count(diag, off, lo);
  std::vector<double> out;
  out.reserve(total);
  const int base = sturm_count(diag, off, lo);
  for (int k = 0; k < total; ++k) {
    double a = lo;
    double b = hi;
    // eigenvalue with index base + k (0-based from the bottom of the spectrum)
    for (int it = 0; it < 120 && b - a > 1e-12 * std::max(1.0, std::abs(b)); ++it) {
      const double m = 0.5 * (a + b);
      if (sturm_count(diag, off, m) - base > k) {
        b = m;
      } else {
        a = m;
      }
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

std::vector<double> fd_spectrum(const PotentialProfile& profile, double pad, int grid_points,
                                double hbar, double retain_below) {
  const double lo = profile.x_min - pad;
  const double hi = profile.x_max + pad;
  const int n = grid_points;
  const double h = (hi - lo) / (n + 1);
  std::vector<double> diag(n);
  std::vector<double> off(n - 1);
  double v_floor = retain_below;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (i + 1) * h;
    const double m = profile.mass(x);
    const double v = profile.potential(x);
    diag[i] = hbar * hbar / (m * h * h) + v;
    v_floor = std::min(v_floor, v);
    if (i + 1 < n) {
      const double xm = lo + (i + 1.5) * h;
      off[i] = -hbar * hbar / (2.0 * profile.mass(xm) * h * h);
    }
  }
  return tridiag_eigens_below(diag, off, v_floor - 1.0, retain_below);
}

}  // namespace

double RectWellEigenfunction::operator()(double x) const {
  const double ax = std::abs(x);
  const double sign_out = (!even && x < 0.0) ? -1.0 : 1.0;
  if (ax <= half_width) {
    return even ? amp_inside * std::cos(k_inside * x) : amp_inside * std::sin(k_inside * x);
  }
  return sign_out * amp_outside * std::exp(-kappa_out * (ax - half_width));
}

RectWellEigenfunction rect_well_eigenfunction(const RectangularWellSpec& spec, int level) {
  const auto energies = rect_well_eigenvalues(spec);
  if (level < 0 || level >= static_cast<int>(energies.size())) {
    throw std::domain_error("rect_well_eigenfunction: level " + std::to_string(level) +
                            " out of range; well holds " + std::to_string(energies.size()) +
                            " states");
  }
  RectWellEigenfunction f{};
  f.level = level;
  f.energy_above_bottom = energies[level];
  f.even = level % 2 == 0;
  f.half_width = spec.width / 2.0;
  f.k_inside = std::sqrt(2.0 * spec.mass * energies[level]) / spec.hbar;
  f.kappa_out = std::sqrt(2.0 * spec.mass * (spec.depth - energies[level])) / spec.hbar;
  // Norm with amp_inside = 1: inside integral of cos^2/sin^2 plus two tails
  // matched at |x| = half_width.
  const double a = f.half_width;
  const double k = f.k_inside;
  const double inside = f.even ? (a + std::sin(2.0 * k * a) / (2.0 * k))
                               : (a - std::sin(2.0 * k * a) / (2.0 * k));
  const double edge = f.even ? std::cos(k * a) : std::sin(k * a);
  const double tails = edge * edge / f.kappa_out;
  const double norm = std::sqrt(inside + tails);
  f.amp_inside = 1.0 / norm;
  f.amp_outside = f.amp_inside * edge;
  return f;
}

std::vector<double> direct_ode_eigenvalues(const PotentialProfile& profile, int grid_points,
                                           double hbar) {
  if (grid_points < 500) {
    throw ConfigError("direct_ode_eigenvalues: grid_points must be at least 500");
  }
  const double retain_below = std::min(profile.v_left, profile.v_right);
  // Depth scale for the initial evanescent-tail padding: five decay lengths of
  // a weakly bound state (5% of the depth).
  double v_min = retain_below;
  const int probe = 512;
  double m_typ = 0.0;
  for (int i = 0; i <= probe; ++i) {
    const double x = profile.x_min + (profile.x_max - profile.x_min) * i / probe;
    v_min = std::min(v_min, profile.potential(x));
    m_typ = std::max(m_typ, profile.mass(x));
  }
  const double depth = retain_below - v_min;
  if (!(depth > 0.0)) return {};  // nothing below the asymptotes anywhere
  const double shallow_binding = std::max(0.05 * depth, 1e-12);
  double pad = 5.0 * hbar / std::sqrt(2.0 * m_typ * shallow_binding);

  // Keep the grid spacing h fixed while the box doubles, so successive
  // spectra differ only by the wall placement being tested.
  const double base_span = profile.x_max - profile.x_min;
  const double h = (base_span + 2.0 * pad) / (grid_points + 1);
  const auto spectrum_at = [&](double pad_now) {
    const int points = static_cast<int>(std::lround((base_span + 2.0 * pad_now) / h)) - 1;
    const double pad_exact = (h * (points + 1) - base_span) / 2.0;
    return fd_spectrum(profile, pad_exact, points, hbar, retain_below - 1e-12);
  };
  std::vector<double> prev = spectrum_at(pad);
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::vector<double> next = spectrum_at(2.0 * pad);
    bool stable = prev.size() <= next.size();
    if (stable) {
      for (std::size_t i = 0; i < prev.size(); ++i) {
        if (std::abs(prev[i] - next[i]) > 1e-6) {
          stable = false;
          break;
        }
      }
    }
    if (stable) return prev;
    prev = std::move(next);
    pad *= 2.0;
  }
  throw AccuracyError("direct_ode_eigenvalues: box size did not converge", 1e-6);
}

}  // namespace qtm
