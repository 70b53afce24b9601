#pragma once

#include <vector>

#include "qtm/profile.hpp"

namespace qtm {

/// Finite rectangular well characterized the way the eigenvalue tables do:
/// depth V = V_asymptote - V_inside and the full width of the well.
struct RectangularWellSpec {
  double depth;
  double width;
  double mass = 1.0;
  double hbar = 1.0;

  RectangularWellSpec(double v, double w, double m = 1.0, double hb = 1.0);
};

/// All bound levels of the finite rectangular well from the standard even/odd
/// matching conditions z tan z = sqrt(z0^2 - z^2) and -z cot z = ..., solved
/// by bracketed bisection. Energies are well-bottom referenced (in (0, V)),
/// ascending. A finite well always holds at least one state.
std::vector<double> rect_well_eigenvalues(const RectangularWellSpec& spec);

/// Brute-force reference spectrum: eigenvalues of the three-point
/// finite-difference discretization of the stationary equation with hard
/// walls, computed by Sturm-sequence bisection on the tridiagonal matrix.
/// The box is padded beyond the profile domain and doubled until no retained
/// eigenvalue moves by more than 1e-6. Only energies below the lower
/// asymptotic potential are retained; absolute energies, ascending.
std::vector<double> direct_ode_eigenvalues(const PotentialProfile& profile, int grid_points,
                                           double hbar = 1.0);

/// Normalized analytic eigenfunction of the rectangular well for the given
/// level (0-based, parity alternating even/odd): trigonometric inside the
/// well, exponential tails outside. The well is centered on x = 0.
struct RectWellEigenfunction {
  double energy_above_bottom;
  int level;
  double operator()(double x) const;

  double k_inside;   // oscillation wavenumber inside the well
  double kappa_out;  // decay rate outside
  double half_width;
  double amp_inside;
  double amp_outside;
  bool even;
};

RectWellEigenfunction rect_well_eigenfunction(const RectangularWellSpec& spec, int level);

}  // namespace qtm
