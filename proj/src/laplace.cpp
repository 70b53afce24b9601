#include "qtm/laplace.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qtm/quadrature.hpp"

namespace qtm {

LaplaceQuery::LaplaceQuery(double m, double hb, double v0, double dx)
    : mass(m), hbar(hb), strength(v0), delta_x(dx) {
  if (!(m > 0.0)) throw std::domain_error("laplace query: mass must be positive");
  if (!(hb > 0.0)) throw std::domain_error("laplace query: hbar must be positive");
  if (!(dx >= 0.0)) throw std::domain_error("laplace query: delta_x must be non-negative");
}

namespace {

void require_right_half_plane(std::complex<double> s) {
  if (!(s.real() > 0.0)) {
    throw std::domain_error("laplace evaluation requires Re(s) > 0");
  }
}

// sqrt(2 m i s / hbar) continued from the right half-plane across the upper
// sheet: equal to the principal root for Re(s) > 0, and smooth along contours
// that wrap toward the negative real axis (used by the inversion utility).
std::complex<double> continued_wavenumber(std::complex<double> s, double mass, double hbar) {
  const double phi = std::arg(s);
  const double mag = std::sqrt(2.0 * mass * std::abs(s) / hbar);
  return std::polar(mag, 0.5 * (phi + std::numbers::pi / 2.0));
}

std::complex<double> free_green_q(double x, double x0, double mass, double hbar,
                                  std::complex<double> q) {
  const std::complex<double> i{0.0, 1.0};
  return mass / (i * hbar * hbar * q) * std::exp(i * q * std::abs(x - x0));
}

std::complex<double> dressed_green_q(double x, std::complex<double> s, double x0,
                                     const LaplaceQuery& lq, std::complex<double> q) {
  const std::complex<double> g0 = free_green_q(x, x0, lq.mass, lq.hbar, q);
  if (lq.delta_x == 0.0) return g0;  // no scatterer width, nothing to dress
  const std::complex<double> i{0.0, 1.0};
  const std::complex<double> coupling = lq.mass / (i * lq.hbar * lq.hbar) *
                                        (i * lq.hbar * s - lq.strength) *
                                        (2.0 * lq.delta_x) / q;
  const std::complex<double> denom = 1.0 + coupling * std::exp(-i * q * lq.delta_x);
  if (std::abs(denom) < 1e-12) {
    throw PoleProximityError("dressed_green: evaluation point is too close to a pole",
                             s.real(), s.imag(), std::abs(denom));
  }
  // The junction responds to the field at the origin: the correction is the
  // origin value g0(0 | x0)/denom re-radiated through the coupling, so its
  // sign rides on the kernel normalization.
  const std::complex<double> correction =
      -coupling * free_green_q(0.0, x0, lq.mass, lq.hbar, q) *
      std::exp(i * q * (std::abs(x) - lq.delta_x)) / denom;
  return g0 + correction;
}

}  // namespace

std::complex<double> laplace_wavenumber(std::complex<double> s, double mass, double hbar) {
  require_right_half_plane(s);
  return continued_wavenumber(s, mass, hbar);
}

std::complex<double> free_green(double x, std::complex<double> s, double x0, double mass,
                                double hbar) {
  return free_green_q(x, x0, mass, hbar, laplace_wavenumber(s, mass, hbar));
}

std::complex<double> dressed_green(double x, std::complex<double> s, double x0,
                                   const LaplaceQuery& lq) {
  return dressed_green_q(x, s, x0, lq, laplace_wavenumber(s, lq.mass, lq.hbar));
}

InitialPacket::InitialPacket(std::function<std::complex<double>(double)> amp, double lo,
                             double hi)
    : amplitude(std::move(amp)), support_lo(lo), support_hi(hi) {
  if (!(lo < hi)) throw std::domain_error("initial packet: empty support window");
  const auto density = [this](double x) { return std::norm(amplitude(x)); };
  const double total = integrate(density, lo, hi, 1e-12);
  if (std::abs(total - 1.0) > 1e-8) {
    throw std::domain_error("initial packet: norm deviates from 1 by " +
                            std::to_string(std::abs(total - 1.0)));
  }
  if (std::abs(amplitude(lo)) > 1e-12 || std::abs(amplitude(hi)) > 1e-12) {
    throw std::domain_error("initial packet: amplitude not negligible at the support edges");
  }
}

InitialPacket gaussian_packet(double center, double sigma, double k0) {
  if (!(sigma > 0.0)) throw std::domain_error("gaussian packet: sigma must be positive");
  const double norm = std::pow(std::numbers::pi * sigma * sigma, -0.25);
  auto amp = [center, sigma, k0, norm](double x) {
    const double u = (x - center) / sigma;
    return norm * std::exp(std::complex<double>(-0.5 * u * u, k0 * x));
  };
  return InitialPacket(std::move(amp), center - 8.0 * sigma, center + 8.0 * sigma);
}

namespace {

std::complex<double> psi_laplace_q(double x, std::complex<double> s,
                                   const InitialPacket& packet, const LaplaceQuery& lq,
                                   std::complex<double> q) {
  const std::complex<double> i{0.0, 1.0};
  const auto integrand = [&](double x0) {
    return dressed_green_q(x, s, x0, lq, q) * packet.amplitude(x0);
  };
  // The kernel has |x - x0| and |x0| kinks; at large |s| it is sharply peaked
  // at exactly those points, so force subdivisions there.
  const std::complex<double> integral = integrate_with_breakpoints(
      integrand, packet.support_lo, packet.support_hi, {x, 0.0}, 1e-12, 52);
  return i * lq.hbar * integral;
}

}  // namespace

std::complex<double> psi_laplace(double x, std::complex<double> s, const InitialPacket& packet,
                                 const LaplaceQuery& lq) {
  require_right_half_plane(s);
  return psi_laplace_q(x, s, packet, lq, continued_wavenumber(s, lq.mass, lq.hbar));
}

TimeDomainValue invert_to_time(double x, double t, const InitialPacket& packet,
                               const LaplaceQuery& lq, int contour_nodes) {
  if (!(t > 0.0)) throw std::domain_error("invert_to_time requires t > 0");
  if (contour_nodes < 12) throw std::domain_error("invert_to_time: need at least 12 nodes");
  const double pi = std::numbers::pi;
  const std::complex<double> i{0.0, 1.0};
  // Fixed-Talbot contour s(theta) = r theta (cot theta + i), r = 2M/(5t),
  // applied separately to the real and imaginary parts of the wavefunction
  // (the usual conjugate-symmetry shortcut only holds for real originals;
  // the transforms of Re(psi) and Im(psi) are recovered from psi(s) and
  // conj(psi(conj(s)))).
  const auto evaluate = [&](int m_nodes) {
    const double r = 2.0 * m_nodes / (5.0 * t);
    // Evaluations use the upper-sheet continuation of the wavenumber: the
    // contour wraps into Re(s) < 0 where the transform integral itself
    // diverges but its continuation is what the inversion needs.
    const auto continued_psi = [&](std::complex<double> s) {
      return psi_laplace_q(x, s, packet, lq, continued_wavenumber(s, lq.mass, lq.hbar));
    };
    const auto u_and_v = [&](std::complex<double> s) {
      const std::complex<double> a = continued_psi(s);
      const std::complex<double> b = std::conj(continued_psi(std::conj(s)));
      return std::pair{0.5 * (a + b), 0.5 * (a - b) / i};
    };
    const auto [u0, v0] = u_and_v({r, 0.0});
    double sum_u = 0.5 * std::exp(r * t) * u0.real();
    double sum_v = 0.5 * std::exp(r * t) * v0.real();
    for (int k = 1; k < m_nodes; ++k) {
      const double theta = k * pi / m_nodes;
      const double cot = std::cos(theta) / std::sin(theta);
      const std::complex<double> sk = r * theta * std::complex<double>{cot, 1.0};
      const double sigma = theta + (theta * cot - 1.0) * cot;
      const std::complex<double> weight = std::exp(sk * t) * (1.0 + i * sigma);
      const auto [uk, vk] = u_and_v(sk);
      sum_u += (weight * uk).real();
      sum_v += (weight * vk).real();
    }
    return std::complex<double>{(r / m_nodes) * sum_u, (r / m_nodes) * sum_v};
  };
  const std::complex<double> fine = evaluate(contour_nodes);
  const std::complex<double> coarse = evaluate(std::max(12, contour_nodes - 8));
  return {fine, std::abs(fine - coarse)};
}

}  // namespace qtm
