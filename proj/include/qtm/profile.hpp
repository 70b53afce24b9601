#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qtm/errors.hpp"

namespace qtm {

/// A continuous potential V(x) and effective mass m(x) on a finite domain,
/// with the asymptotic potential values to the left and right of it.
/// Samplers must be pure and thread-safe; profiles are immutable once built.
struct PotentialProfile {
  enum class Source { Builtin, Tabulated, Callback };

  std::function<double(double)> potential;
  std::function<double(double)> mass;
  double x_min = 0.0;
  double x_max = 0.0;
  double v_left = 0.0;
  double v_right = 0.0;
  Source source = Source::Callback;
  std::string source_name;
};

struct TabulatedRow {
  double x;
  double potential;
  double mass;
};

/// Linear-interpolating profile from (x, V, m) rows. Requires at least two
/// rows, strictly increasing x, and positive mass; violations name the
/// offending row. Asymptotes are taken from the first and last rows.
PotentialProfile load_tabulated(const std::vector<TabulatedRow>& rows);

/// Parse the plain-text tabulated format: one "x V m" triple per line,
/// whitespace-delimited decimal floats, '#' starts a comment.
std::vector<TabulatedRow> parse_tabulated(std::istream& in);

/// Rectangle of signed height v0 on (-width/2, width/2), zero outside.
/// Negative v0 is a well. Domain equals the rectangle span.
PotentialProfile make_rectangular(double v0, double width, double mass = 1.0);

/// Gaussian bump of signed peak v0: V(x) = v0 exp(-x^2 / (2 sigma^2)) with
/// sigma = width/2. The domain is chosen wide enough that the tails are
/// negligible against |v0| unless overridden.
PotentialProfile make_gaussian(double v0, double width, double mass = 1.0, double x_min = 0.0,
                               double x_max = 0.0);

/// Two rectangles of height v0 and width `barrier_width` whose inner edges are
/// `separation` apart, centered on the origin.
PotentialProfile make_double_barrier(double v0, double barrier_width, double separation,
                                     double mass = 1.0);

/// Free-form profile from callbacks.
PotentialProfile make_callback_profile(std::function<double(double)> potential,
                                       std::function<double(double)> mass, double x_min,
                                       double x_max, double v_left, double v_right);

/// The alternating wave-region / ultra-short-junction decomposition of a
/// profile. Regions are numbered 1..N (N odd): odd regions carry oscillatory,
/// evanescent or linear wavefunctions; even regions are the flat-wavefunction
/// junctions of width 2*delta_x. Region r spans (breakpoint[r-2], breakpoint[r-1])
/// in 1-based terms, with regions 1 and N extending to +-infinity.
struct SegmentedProfile {
  std::vector<double> breakpoints;  // N-1 ascending positions a_1 .. a_{N-1}
  std::vector<double> potentials;   // N region values, [0] and [N-1] asymptotic
  std::vector<double> masses;       // N region values
  double delta_x = 0.0;             // junction half-width
  double hbar = 1.0;

  SegmentedProfile(std::vector<double> breaks, std::vector<double> region_potentials,
                   std::vector<double> region_masses, double junction_half_width,
                   double hbar_value);

  int region_count() const { return static_cast<int>(potentials.size()); }
  int junction_count() const { return (region_count() - 1) / 2; }
  /// r is a 0-based region index; junctions sit at odd indices.
  bool is_junction(int r) const { return r % 2 == 1; }
  double v_min() const;
  /// min(V_1, V_N): the ceiling of the bound-state window.
  double asymptote_min() const;
  double asymptote_max() const;
};

/// Decompose a profile into `junction_count` uniformly placed junctions of
/// half-width delta_x. Junction and wave-region values are the source
/// samplers evaluated at each region midpoint; the outermost regions take the
/// profile's asymptotic values. For a single junction the junction is
/// centered in the domain; otherwise the first junction's left edge is at
/// x_min and the last junction's right edge at x_max.
SegmentedProfile discretize(const PotentialProfile& profile, int junction_count, double delta_x,
                            double hbar = 1.0);

}  // namespace qtm
