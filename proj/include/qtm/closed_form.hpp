#pragma once

#include <complex>
#include <vector>

#include "qtm/errors.hpp"

namespace qtm {

/// Parameters of a single ultra-short potential: a flat bump of height V0
/// (or depth V0, depending on the operation) occupying |x| < delta_x, across
/// which the wavefunction is treated as constant. The derivative jump that
/// replaces the usual matching conditions is energy dependent, which is what
/// distinguishes this model from a Dirac delta or a thin rectangle.
struct UltraShortParams {
  double mass;
  double hbar;
  double strength;    // V0 >= 0; barrier/well sign is chosen per operation
  double half_width;  // delta_x > 0

  UltraShortParams(double m, double hb, double v0, double dx);

  /// Equivalent Dirac-delta strength k0 = 2 V0 dx (the area of the bump).
  double delta_strength() const { return 2.0 * strength * half_width; }

  /// kappa = sqrt(-2 m E)/hbar for a bound energy E < 0.
  double bound_kappa(double energy) const;
  /// k1 = sqrt(2 m E)/hbar for an incident energy E > 0.
  double incident_wavenumber(double energy) const;
  /// k2 = sqrt(2 m (E - V0))/hbar, real for E >= V0 (rectangular barrier interior).
  double barrier_interior_wavenumber(double energy) const;
  /// k2' = sqrt(2 m (E + V0))/hbar (well interior). Kept as a named derived
  /// quantity; no closed-form result below consumes it.
  double well_interior_wavenumber(double energy) const;
};

enum class PieceForm {
  GrowingExp,     // c1 * exp(+rate x)
  DecayingExp,    // c1 * exp(-rate x)
  PlaneWavePair,  // Re(c1 e^{i rate x} + c2 e^{-i rate x})
  Constant,       // c1
  Linear,         // c1 + c2 x
};

struct WavefunctionPiece {
  PieceForm form;
  double rate = 0.0;  // kappa or k depending on form
  std::complex<double> c1{0.0, 0.0};
  std::complex<double> c2{0.0, 0.0};
};

/// A wavefunction assembled from closed-form pieces on consecutive intervals.
/// Pieces are separated by `breakpoints`; piece i lives on
/// (breakpoint[i-1], breakpoint[i]) with the first and last pieces extending
/// to -inf / +inf.
class PiecewiseWavefunction {
 public:
  PiecewiseWavefunction(std::vector<double> breakpoints, std::vector<WavefunctionPiece> pieces,
                        double energy);

  double operator()(double x) const;
  double energy() const { return energy_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<WavefunctionPiece>& pieces() const { return pieces_; }

  /// Largest relative mismatch across all breakpoints (left vs right limits).
  double max_continuity_gap() const;
  /// Integral of |psi|^2 over the whole line by truncated adaptive quadrature.
  double norm_squared() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<WavefunctionPiece> pieces_;
  double energy_;
};

struct BoundEnergyResult {
  double energy;  // exactly 0 when bound == false
  bool bound;
};

/// The single bound level of the ultra-short well,
///   E+ = (sqrt(8 dx^2 m V0 hbar^2 + hbar^4) - 4 dx^2 m V0 - hbar^2) / (4 dx^2 m),
/// evaluated in a cancellation-free form. Always lies in (-V0, 0).
/// V0 = 0 returns {0, false}: zero strength binds nothing.
BoundEnergyResult bound_energy_ultrashort(const UltraShortParams& p);

/// Even three-piece eigenfunction of the ultra-short well, normalized:
/// A e^{kx} | const | B e^{-kx} with A = B = e^{k dx} / sqrt(1/k + 2 dx).
PiecewiseWavefunction bound_wavefunction_ultrashort(const UltraShortParams& p);

struct DiracDeltaBound {
  double energy;
  PiecewiseWavefunction wavefunction;
};

/// Bound state of the Dirac delta well of strength k0:
/// E = -m k0^2 / (2 hbar^2), psi = sqrt(kappa) e^{-kappa |x|}, kappa = m k0 / hbar^2.
DiracDeltaBound dirac_delta_bound(double mass, double hbar, double k0);

struct Scattering {
  double transmission;
  double reflection;  // 1 - T by construction; the model conserves flux exactly
};

/// T(E) = 1 / (1 + (m (E - V0) 2 dx / (hbar^2 k1))^2) for the ultra-short barrier.
/// Resonant (T = 1) exactly at E = V0.
Scattering transmission_barrier_ultrashort(const UltraShortParams& p, double energy);

/// Same with V0 -> -V0: the ultra-short well. The transmission peaks at E = V0
/// with T_peak = hbar^2 / (hbar^2 + 8 dx^2 m V0) (Ramsauer-type maximum).
Scattering transmission_well_ultrashort(const UltraShortParams& p, double energy);

/// Peak transmission of the ultra-short well, reached at E = V0.
double ramsauer_peak_transmission(const UltraShortParams& p);

/// Transmission of a rectangular barrier of half-width a (total width 2a):
///   T = [cos^2(2 k2 a) + ((k1^2 + k2^2)/(k1 k2))^2 sin^2(2 k2 a)/4]^{-1}.
/// Valid for all E > 0: E < V0 is evaluated in hyperbolic form and the
/// removable E = V0 point through a series kernel, both via
///   T = [1 + a^2 (2 m V0 / hbar^2)^2 S(4 a^2 w) / k1^2]^{-1},
///   w = 2 m (E - V0)/hbar^2,  S(z) = sin^2(sqrt(z))/z.
double transmission_rectangular(double mass, double hbar, double v0, double half_width,
                                double energy);

}  // namespace qtm
