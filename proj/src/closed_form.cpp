#include "qtm/closed_form.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qtm/quadrature.hpp"

namespace qtm {

UltraShortParams::UltraShortParams(double m, double hb, double v0, double dx)
    : mass(m), hbar(hb), strength(v0), half_width(dx) {
  if (!(m > 0.0)) throw std::domain_error("ultra-short params: mass must be positive");
  if (!(hb > 0.0)) throw std::domain_error("ultra-short params: hbar must be positive");
  if (!(v0 >= 0.0)) throw std::domain_error("ultra-short params: strength must be non-negative");
  if (!(dx > 0.0)) throw std::domain_error("ultra-short params: half_width must be positive");
}

double UltraShortParams::bound_kappa(double energy) const {
  if (energy > 0.0) throw std::domain_error("bound_kappa requires E <= 0");
  return std::sqrt(-2.0 * mass * energy) / hbar;
}

double UltraShortParams::incident_wavenumber(double energy) const {
  if (!(energy > 0.0)) throw std::domain_error("incident wavenumber requires E > 0");
  return std::sqrt(2.0 * mass * energy) / hbar;
}

double UltraShortParams::barrier_interior_wavenumber(double energy) const {
  if (energy < strength) throw std::domain_error("barrier interior wavenumber requires E >= V0");
  return std::sqrt(2.0 * mass * (energy - strength)) / hbar;
}

double UltraShortParams::well_interior_wavenumber(double energy) const {
  if (energy < -strength) throw std::domain_error("well interior wavenumber requires E >= -V0");
  return std::sqrt(2.0 * mass * (strength + energy)) / hbar;
}

PiecewiseWavefunction::PiecewiseWavefunction(std::vector<double> breakpoints,
                                             std::vector<WavefunctionPiece> pieces, double energy)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), energy_(energy) {
  if (pieces_.size() != breakpoints_.size() + 1) {
    throw std::invalid_argument("piecewise wavefunction: need one more piece than breakpoints");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i - 1] < breakpoints_[i])) {
      throw std::invalid_argument("piecewise wavefunction: breakpoints must increase");
    }
  }
}

namespace {

double eval_piece(const WavefunctionPiece& p, double x) {
  switch (p.form) {
    case PieceForm::GrowingExp:
      return p.c1.real() * std::exp(p.rate * x);
    case PieceForm::DecayingExp:
      return p.c1.real() * std::exp(-p.rate * x);
    case PieceForm::PlaneWavePair: {
      const std::complex<double> phase{0.0, p.rate * x};
      return (p.c1 * std::exp(phase) + p.c2 * std::exp(-phase)).real();
    }
    case PieceForm::Constant:
      return p.c1.real();
    case PieceForm::Linear:
      return p.c1.real() + p.c2.real() * x;
  }
  return 0.0;
}

}  // namespace

double PiecewiseWavefunction::operator()(double x) const {
  std::size_t i = 0;
  while (i < breakpoints_.size() && x > breakpoints_[i]) ++i;
  return eval_piece(pieces_[i], x);
}

double PiecewiseWavefunction::max_continuity_gap() const {
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double left = eval_piece(pieces_[i], breakpoints_[i]);
    const double right = eval_piece(pieces_[i + 1], breakpoints_[i]);
    worst = std::max(worst, std::abs(left - right));
    scale = std::max(scale, std::max(std::abs(left), std::abs(right)));
  }
  return scale > 0.0 ? worst / scale : worst;
}

double PiecewiseWavefunction::norm_squared() const {
  const double lo = breakpoints_.empty() ? -1.0 : breakpoints_.front();
  const double hi = breakpoints_.empty() ? 1.0 : breakpoints_.back();
  const auto f = [this](double x) {
    const double v = (*this)(x);
    return v * v;
  };
  return integrate_decaying(f, lo, hi, 1e-16, 1e-10);
}

BoundEnergyResult bound_energy_ultrashort(const UltraShortParams& p) {
  if (p.strength == 0.0) return {0.0, false};
  // E+ = hbar^2 (sqrt(1+eps) - 1 - eps/2) / (4 dx^2 m) with eps = 8 dx^2 m V0 / hbar^2.
  // Rewritten via sqrt(1+eps) - 1 - eps/2 = -(eps^2/4)/(sqrt(1+eps) + 1 + eps/2)
  // so the small-dx cancellation never happens and the Dirac limit is clean.
  const double h2 = p.hbar * p.hbar;
  const double eps = 8.0 * p.half_width * p.half_width * p.mass * p.strength / h2;
  const double energy = -h2 * eps * eps /
                        (16.0 * p.half_width * p.half_width * p.mass *
                         (std::sqrt(1.0 + eps) + 1.0 + 0.5 * eps));
  return {energy, true};
}

PiecewiseWavefunction bound_wavefunction_ultrashort(const UltraShortParams& p) {
  const auto be = bound_energy_ultrashort(p);
  if (!be.bound) throw std::domain_error("ultra-short well with V0 = 0 has no bound state");
  const double kappa = p.bound_kappa(be.energy);
  const double amp = std::exp(kappa * p.half_width) / std::sqrt(1.0 / kappa + 2.0 * p.half_width);
  const double center = amp * std::exp(-kappa * p.half_width);
  std::vector<WavefunctionPiece> pieces(3);
  pieces[0] = {PieceForm::GrowingExp, kappa, amp, 0.0};
  pieces[1] = {PieceForm::Constant, 0.0, center, 0.0};
  pieces[2] = {PieceForm::DecayingExp, kappa, amp, 0.0};
  return PiecewiseWavefunction({-p.half_width, p.half_width}, std::move(pieces), be.energy);
}

DiracDeltaBound dirac_delta_bound(double mass, double hbar, double k0) {
  if (!(k0 > 0.0)) throw std::domain_error("dirac_delta_bound requires k0 > 0");
  if (!(mass > 0.0) || !(hbar > 0.0)) {
    throw std::domain_error("dirac_delta_bound requires positive mass and hbar");
  }
  const double kappa = mass * k0 / (hbar * hbar);
  const double energy = -mass * k0 * k0 / (2.0 * hbar * hbar);
  const double amp = std::sqrt(kappa);
  std::vector<WavefunctionPiece> pieces(2);
  pieces[0] = {PieceForm::GrowingExp, kappa, amp, 0.0};
  pieces[1] = {PieceForm::DecayingExp, kappa, amp, 0.0};
  return {energy, PiecewiseWavefunction({0.0}, std::move(pieces), energy)};
}

namespace {

Scattering ultrashort_scattering(const UltraShortParams& p, double energy, double signed_v0) {
  if (!(energy > 0.0)) throw std::domain_error("scattering requires E > 0");
  const double k1 = p.incident_wavenumber(energy);
  const double c = p.mass * (energy - signed_v0) * 2.0 * p.half_width / (p.hbar * p.hbar * k1);
  const double t = 1.0 / (1.0 + c * c);
  return {t, 1.0 - t};
}

}  // namespace

Scattering transmission_barrier_ultrashort(const UltraShortParams& p, double energy) {
  return ultrashort_scattering(p, energy, p.strength);
}

Scattering transmission_well_ultrashort(const UltraShortParams& p, double energy) {
  return ultrashort_scattering(p, energy, -p.strength);
}

double ramsauer_peak_transmission(const UltraShortParams& p) {
  const double h2 = p.hbar * p.hbar;
  return h2 / (h2 + 8.0 * p.half_width * p.half_width * p.mass * p.strength);
}

double transmission_rectangular(double mass, double hbar, double v0, double half_width,
                                double energy) {
  if (!(energy > 0.0)) throw std::domain_error("transmission_rectangular requires E > 0");
  if (!(half_width > 0.0)) throw std::domain_error("transmission_rectangular requires a > 0");
  const double h2 = hbar * hbar;
  const double k1_sq = 2.0 * mass * energy / h2;
  const double w = 2.0 * mass * (energy - v0) / h2;  // k2^2, negative below the barrier top
  const double z = 4.0 * half_width * half_width * w;
  // S(z) = sin^2(sqrt(z))/z, continued to sinh^2(sqrt(-z))/(-z) for z < 0 and
  // by series through the removable point z = 0.
  double s_of_z;
  if (std::abs(z) < 1e-8 * std::max(1.0, 4.0 * half_width * half_width * 2.0 * mass * v0 / h2)) {
    s_of_z = 1.0 - z / 3.0 + 2.0 * z * z / 45.0;
  } else if (z > 0.0) {
    const double r = std::sin(std::sqrt(z));
    s_of_z = r * r / z;
  } else {
    const double y = std::sqrt(-z);
    if (y > 350.0) {
      // sinh^2 would overflow; the transmission underflows to zero.
      return 0.0;
    }
    const double r = std::sinh(y);
    s_of_z = r * r / (-z);
  }
  const double dk = k1_sq - w;  // equals 2 m V0 / hbar^2, independent of E
  const double denom = 1.0 + half_width * half_width * dk * dk * s_of_z / k1_sq;
  return 1.0 / denom;
}

}  // namespace qtm
