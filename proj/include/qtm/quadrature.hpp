#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qtm/errors.hpp"

namespace qtm {

namespace detail {

template <typename F, typename R>
R adaptive_simpson_step(const F& f, double a, double b, R fa, R fm, R fb, R whole, double tol,
                        int depth, double* worst) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const R flm = f(lm);
  const R frm = f(rm);
  const R left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const R right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const R delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14 * (std::abs(a) + std::abs(b) + 1.0)) {
    if (depth <= 0 && std::abs(delta) > 15.0 * tol && worst != nullptr) {
      *worst = std::max(*worst, std::abs(delta) / 15.0);
    }
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    if (worst != nullptr) *worst = std::max(*worst, std::abs(delta) / 15.0);
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, worst) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, worst);
}

}  // namespace detail

/// Adaptive composite Simpson on [a, b] to an absolute tolerance.
/// Throws AccuracyError when the recursion depth limit is hit before the
/// tolerance is met; the exception carries the achieved error estimate.
template <typename F>
auto integrate(const F& f, double a, double b, double abs_tol = 1e-10, int max_depth = 48)
    -> decltype(f(a)) {
  using R = decltype(f(a));
  if (a == b) return R{};
  const R fa = f(a);
  const R fb = f(b);
  const double m = 0.5 * (a + b);
  const R fm = f(m);
  const R whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double worst = 0.0;
  const R result =
      detail::adaptive_simpson_step(f, a, b, fa, fm, fb, whole, abs_tol, max_depth, &worst);
  if (worst > abs_tol) {
    throw AccuracyError("quadrature did not reach requested tolerance", worst);
  }
  return result;
}

/// Same as integrate() but forces subdivision at interior breakpoints
/// (kinks of the integrand), which adaptive Simpson would otherwise skip over.
template <typename F>
auto integrate_with_breakpoints(const F& f, double a, double b, std::vector<double> breakpoints,
                                double abs_tol = 1e-10, int max_depth = 48) -> decltype(f(a)) {
  using R = decltype(f(a));
  std::vector<double> cuts;
  cuts.push_back(a);
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  R total{};
  const double piece_tol = abs_tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate(f, cuts[i], cuts[i + 1], piece_tol, max_depth);
  }
  return total;
}

/// Integrate a decaying |f|^2-style integrand over the whole line: expand the
/// window symmetrically around [lo, hi] until the integrand falls below
/// `rel_cutoff` of its peak at both ends, then apply adaptive Simpson.
template <typename F>
double integrate_decaying(const F& f, double lo, double hi, double rel_cutoff = 1e-16,
                          double abs_tol = 1e-10) {
  double peak = 0.0;
  const int probe = 257;
  for (int i = 0; i < probe; ++i) {
    const double x = lo + (hi - lo) * i / (probe - 1);
    peak = std::max(peak, std::abs(f(x)));
  }
  if (peak == 0.0) return 0.0;
  const double floor = peak * rel_cutoff;
  double step = std::max(hi - lo, 1.0);
  double a = lo;
  double b = hi;
  for (int i = 0; i < 60 && std::abs(f(a)) > floor; ++i) a -= step;
  for (int i = 0; i < 60 && std::abs(f(b)) > floor; ++i) b += step;
  // Anchor the original window: a localized integrand deep inside the
  // expanded interval would otherwise be invisible to the first Simpson probes.
  return integrate_with_breakpoints(f, a, b, {lo, 0.5 * (lo + hi), hi}, abs_tol);
}

}  // namespace qtm
