#pragma once

#include <complex>
#include <functional>

#include "qtm/errors.hpp"

namespace qtm {

/// Parameters of the time-dependent ultra-short scatterer in the Laplace
/// domain: signed strength v0 (negative binds) acting on |x| < delta_x.
/// delta_x = 0 is allowed here and recovers the free propagator exactly.
struct LaplaceQuery {
  double mass = 1.0;
  double hbar = 1.0;
  double strength = 0.0;  // signed v0
  double delta_x = 0.0;

  LaplaceQuery(double m, double hb, double v0, double dx);
};

/// Principal branch of q(s) = sqrt(2 m i s / hbar). For Re(s) > 0 this puts
/// q in the open first quadrant, so exp(i q |x|) decays as |x| grows — the
/// physically forced branch.
std::complex<double> laplace_wavenumber(std::complex<double> s, double mass, double hbar);

/// Laplace-domain free-particle kernel
///   G0(x, s | x0) = (m / (i hbar^2 q)) e^{i q |x - x0|},
/// normalized so that (i hbar s + hbar^2/(2m) d^2/dx^2) G0 = delta(x - x0)
/// and s * psi(x, s) -> psi(x, 0) for s -> +inf.
std::complex<double> free_green(double x, std::complex<double> s, double x0, double mass,
                                double hbar);

/// Ultra-short-dressed kernel for free asymptotics:
///   G1 = G0(x,s|x0) + (i hbar s - v0) 2 dx ((m/(i hbar^2 q)))^2
///        e^{i q (|x| + |x0| - dx)} / D(s),
///   D(s) = 1 + (m/(i hbar^2)) (i hbar s - v0) 2 dx q^{-1} e^{-i q dx}.
/// Throws PoleProximityError when |D| < 1e-12.
std::complex<double> dressed_green(double x, std::complex<double> s, double x0,
                                   const LaplaceQuery& q);

/// A normalized initial wavepacket with compact numerical support.
struct InitialPacket {
  std::function<std::complex<double>(double)> amplitude;
  double support_lo = 0.0;
  double support_hi = 0.0;

  InitialPacket(std::function<std::complex<double>(double)> amp, double lo, double hi);
};

/// Normalized Gaussian packet exp(-(x-center)^2/(2 sigma^2) + i k0 x) with an
/// 8-sigma support window.
InitialPacket gaussian_packet(double center, double sigma, double k0 = 0.0);

/// psi(x, s) = i hbar Integral G1(x, s | x0) psi0(x0) dx0 over the packet
/// support, by adaptive quadrature split at the kernel kinks (x0 = x, x0 = 0)
/// to absolute tolerance 1e-10.
std::complex<double> psi_laplace(double x, std::complex<double> s, const InitialPacket& packet,
                                 const LaplaceQuery& q);

struct TimeDomainValue {
  std::complex<double> value;
  double error_estimate;  // difference against a lower-order contour evaluation
};

/// Optional utility: numerically invert psi(x, s) back to psi(x, t) with a
/// fixed-Talbot contour of M nodes. Accuracy is heuristic (roughly
/// 10^{-0.6 M} for smooth transforms, degrading near oscillatory poles);
/// the returned error_estimate compares M against M-8 nodes.
TimeDomainValue invert_to_time(double x, double t, const InitialPacket& packet,
                               const LaplaceQuery& q, int contour_nodes = 32);

}  // namespace qtm
