#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qtm/profile.hpp"

namespace qtm {

/// 2x2 complex transfer matrix with a separated binary log-scale: the true
/// matrix is entries * 2^log2_scale. Products rescale whenever an entry
/// magnitude passes 1e100, so evanescent chains never overflow; reconstruct
/// magnitudes through abs_log() rather than the raw entries.
struct TransferMatrix2 {
  std::complex<double> t11{1.0, 0.0};
  std::complex<double> t12{0.0, 0.0};
  std::complex<double> t21{0.0, 0.0};
  std::complex<double> t22{1.0, 0.0};
  double log2_scale = 0.0;

  TransferMatrix2 operator*(const TransferMatrix2& rhs) const;

  /// ln |entry * 2^log2_scale| for the (1,1) entry and friends.
  double abs_log_t11() const;
  /// Largest raw entry magnitude (scale not applied).
  double max_entry_abs() const;
  /// Frobenius norm of the raw entries (scale not applied).
  double frobenius() const;
  /// Rescale so max_entry_abs() lands in [1, 2); no-op on a zero matrix.
  void normalize();
};

enum class WaveCase {
  Oscillatory,  // E > V: plane waves e^{+-ikx}
  Evanescent,   // E < V: real exponentials e^{+-kx}
  Linear,       // |E - V| within the case band: psi = A + B x
};

/// Wavefunction character and amplitudes of one region at a given energy.
/// For oscillatory/evanescent regions the amplitudes multiply
/// e^{+q(x-x_ref)} and e^{-q(x-x_ref)} (q = ik or kappa); for linear regions
/// they are the value and slope at x_ref.
struct RegionWave {
  int region = 0;  // 0-based region index
  WaveCase tag = WaveCase::Oscillatory;
  double wavenumber = 0.0;  // k or kappa; 0 in the linear case
  std::complex<double> amplitude_a{0.0, 0.0};
  std::complex<double> amplitude_b{0.0, 0.0};
  double x_ref = 0.0;
};

struct ScatteringPoint {
  double energy = 0.0;
  double transmission = 0.0;
  double reflection = 0.0;
  bool below_asymptote = false;  // energy at or below max(V_1, V_N): no T/R defined
};

struct BoundState {
  double energy = 0.0;           // absolute energy
  double energy_above_bottom = 0.0;  // energy - v_min, the well-bottom convention
  int node_count = 0;
  std::vector<RegionWave> amplitudes;
  std::vector<double> grid;
  std::vector<double> values;  // normalized wavefunction samples on `grid`
};

/// Case classification of region r at energy E. The linear band has width
/// eps = 1e-9 * max(|E|, |V_r|, hbar^2/(2 m_r L^2)) with L the breakpoint span.
WaveCase region_case(const SegmentedProfile& seg, int region, double energy);

/// Wavenumber of region r at energy E (k if oscillatory, kappa if evanescent,
/// 0 in the linear band).
double region_wavenumber(const SegmentedProfile& seg, int region, double energy);

/// The two-factor product [A_j]^{-1} [E_j] that carries amplitudes across the
/// junction between wave regions j and j+2 (j is the 0-based odd-region
/// index: 0, 2, 4, ...). Amplitudes are in the travelling/exponential basis
/// at absolute coordinates.
TransferMatrix2 junction_pair_matrix(const SegmentedProfile& seg, int wave_region, double energy);

struct TotalTransfer {
  TransferMatrix2 matrix;
  int factor_count = 0;  // number of 2x2 multiplications performed: always N-1
};

/// Ordered product of all junction factors: maps the rightmost region's
/// amplitude pair to the leftmost one. Exactly N-1 matrix multiplications for
/// an N-region profile.
TotalTransfer total_transfer(const SegmentedProfile& seg, double energy);

/// T(E) = (k_N / k_1) / |t11|^2 with R = 1 - T, per energy. Grid entries at or
/// below max(V_1, V_N) are flagged below_asymptote instead of failing.
std::vector<ScatteringPoint> transmission_spectrum(const SegmentedProfile& seg,
                                                   std::span<const double> energies);

/// Reflection computed independently from the chain entries, |t21/t11|^2.
/// transmission_spectrum reports R = 1 - T; this accessor exists so flux
/// conservation can be checked rather than assumed.
double reflection_coefficient(const SegmentedProfile& seg, double energy);

/// Real-valued function of E on (v_min, min(V_1, V_N)) whose zeros are the
/// bound eigenvalues: the chain entry that couples the two decaying
/// asymptotic solutions, normalized by the chain's Frobenius scale so values
/// are O(1) and bracketable.
double bound_determinant(const SegmentedProfile& seg, double energy);

/// Scan the bound window on `scan_points` uniform samples, bracket sign
/// changes of bound_determinant, refine each by bisection, deduplicate and
/// return ascending absolute energies. No roots is a valid empty result.
std::vector<double> eigenvalues(const SegmentedProfile& seg, int scan_points = 2000);

/// Back-substitute region amplitudes at a validated root E_n and sample the
/// normalized eigenfunction on `grid`. Throws NumericError when E_n is not a
/// root (stale energy).
BoundState eigenfunction(const SegmentedProfile& seg, double bound_energy,
                         std::span<const double> grid);

}  // namespace qtm
