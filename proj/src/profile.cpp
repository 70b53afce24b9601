#include "qtm/profile.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <memory>
#include <sstream>
#include <utility>

namespace qtm {

PotentialProfile load_tabulated(const std::vector<TabulatedRow>& rows) {
  if (rows.size() < 2) {
    throw ConfigError("tabulated potential: need at least 2 rows, got " +
                      std::to_string(rows.size()));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].mass > 0.0)) {
      throw ConfigError("tabulated potential: non-positive mass at row " + std::to_string(i + 1));
    }
    if (i > 0 && !(rows[i - 1].x < rows[i].x)) {
      throw ConfigError("tabulated potential: x values must strictly increase at row " +
                        std::to_string(i + 1));
    }
  }
  auto data = std::make_shared<std::vector<TabulatedRow>>(rows);
  const auto interp = [data](double x, auto field) {
    const auto& r = *data;
    if (x <= r.front().x) return field(r.front());
    if (x >= r.back().x) return field(r.back());
    auto it = std::upper_bound(r.begin(), r.end(), x,
                               [](double v, const TabulatedRow& row) { return v < row.x; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (x - lo.x) / (hi.x - lo.x);
    return field(lo) + t * (field(hi) - field(lo));
  };
  PotentialProfile p;
  p.potential = [interp](double x) {
    return interp(x, [](const TabulatedRow& r) { return r.potential; });
  };
  p.mass = [interp](double x) { return interp(x, [](const TabulatedRow& r) { return r.mass; }); };
  p.x_min = rows.front().x;
  p.x_max = rows.back().x;
  p.v_left = rows.front().potential;
  p.v_right = rows.back().potential;
  p.source = PotentialProfile::Source::Tabulated;
  p.source_name = "tabulated";
  return p;
}

std::vector<TabulatedRow> parse_tabulated(std::istream& in) {
  std::vector<TabulatedRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    TabulatedRow row{};
    if (!(ss >> row.x)) continue;  // blank or comment-only line
    if (!(ss >> row.potential >> row.mass)) {
      throw ConfigError("tabulated potential: expected 'x V m' on line " +
                        std::to_string(line_no));
    }
    double extra;
    if (ss >> extra) {
      throw ConfigError("tabulated potential: trailing fields on line " + std::to_string(line_no));
    }
    rows.push_back(row);
  }
  return rows;
}

PotentialProfile make_rectangular(double v0, double width, double mass) {
  if (!(width > 0.0)) throw ConfigError("rectangular potential: width must be positive");
  if (!(mass > 0.0)) throw ConfigError("rectangular potential: mass must be positive");
  PotentialProfile p;
  const double half = width / 2.0;
  p.potential = [v0, half](double x) { return std::abs(x) < half ? v0 : 0.0; };
  p.mass = [mass](double) { return mass; };
  p.x_min = -half;
  p.x_max = half;
  p.v_left = 0.0;
  p.v_right = 0.0;
  p.source = PotentialProfile::Source::Builtin;
  p.source_name = "rectangular";
  return p;
}

PotentialProfile make_gaussian(double v0, double width, double mass, double x_min, double x_max) {
  if (!(width > 0.0)) throw ConfigError("gaussian potential: width must be positive");
  if (!(mass > 0.0)) throw ConfigError("gaussian potential: mass must be positive");
  const double sigma = width / 2.0;
  PotentialProfile p;
  p.potential = [v0, sigma](double x) { return v0 * std::exp(-x * x / (2.0 * sigma * sigma)); };
  p.mass = [mass](double) { return mass; };
  if (x_min == 0.0 && x_max == 0.0) {
    x_min = -3.0 * width / 2.0;
    x_max = 3.0 * width / 2.0;
  }
  if (!(x_min < x_max)) throw ConfigError("gaussian potential: x_min must be below x_max");
  p.x_min = x_min;
  p.x_max = x_max;
  p.v_left = 0.0;
  p.v_right = 0.0;
  p.source = PotentialProfile::Source::Builtin;
  p.source_name = "gaussian";
  return p;
}

PotentialProfile make_double_barrier(double v0, double barrier_width, double separation,
                                     double mass) {
  if (!(barrier_width > 0.0) || !(separation > 0.0)) {
    throw ConfigError("double barrier: barrier_width and separation must be positive");
  }
  if (!(mass > 0.0)) throw ConfigError("double barrier: mass must be positive");
  const double inner = separation / 2.0;
  const double outer = inner + barrier_width;
  PotentialProfile p;
  p.potential = [v0, inner, outer](double x) {
    const double ax = std::abs(x);
    return (ax > inner && ax < outer) ? v0 : 0.0;
  };
  p.mass = [mass](double) { return mass; };
  p.x_min = -outer;
  p.x_max = outer;
  p.v_left = 0.0;
  p.v_right = 0.0;
  p.source = PotentialProfile::Source::Builtin;
  p.source_name = "double-barrier";
  return p;
}

PotentialProfile make_callback_profile(std::function<double(double)> potential,
                                       std::function<double(double)> mass, double x_min,
                                       double x_max, double v_left, double v_right) {
  if (!(x_min < x_max)) throw ConfigError("profile: x_min must be below x_max");
  PotentialProfile p;
  p.potential = std::move(potential);
  p.mass = std::move(mass);
  p.x_min = x_min;
  p.x_max = x_max;
  p.v_left = v_left;
  p.v_right = v_right;
  p.source = PotentialProfile::Source::Callback;
  p.source_name = "callback";
  return p;
}

SegmentedProfile::SegmentedProfile(std::vector<double> breaks,
                                   std::vector<double> region_potentials,
                                   std::vector<double> region_masses, double junction_half_width,
                                   double hbar_value)
    : breakpoints(std::move(breaks)),
      potentials(std::move(region_potentials)),
      masses(std::move(region_masses)),
      delta_x(junction_half_width),
      hbar(hbar_value) {
  const int n = static_cast<int>(potentials.size());
  if (n < 3 || n % 2 == 0) {
    throw ConfigError("segmented profile: region count must be odd and at least 3");
  }
  if (static_cast<int>(breakpoints.size()) != n - 1 ||
      static_cast<int>(masses.size()) != n) {
    throw ConfigError("segmented profile: inconsistent breakpoint/region sizes");
  }
  for (int i = 1; i < n - 1; ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) {
      throw ConfigError("segmented profile: breakpoints must strictly increase");
    }
  }
  for (double m : masses) {
    if (!(m > 0.0)) throw ConfigError("segmented profile: masses must be positive");
  }
  if (!(delta_x > 0.0)) throw ConfigError("segmented profile: delta_x must be positive");
  if (!(hbar > 0.0)) throw ConfigError("segmented profile: hbar must be positive");
}

double SegmentedProfile::v_min() const {
  return *std::min_element(potentials.begin(), potentials.end());
}

double SegmentedProfile::asymptote_min() const {
  return std::min(potentials.front(), potentials.back());
}

double SegmentedProfile::asymptote_max() const {
  return std::max(potentials.front(), potentials.back());
}

SegmentedProfile discretize(const PotentialProfile& profile, int junction_count, double delta_x,
                            double hbar) {
  if (junction_count < 1) throw ConfigError("discretize: junction_count must be at least 1");
  if (!(delta_x > 0.0)) throw ConfigError("discretize: delta_x must be positive");
  const double span = profile.x_max - profile.x_min;
  // A single junction may fill the domain exactly; several must leave room
  // between them.
  const bool fits = junction_count == 1 ? 2.0 * delta_x <= span
                                        : 2.0 * delta_x < span / junction_count;
  if (!fits) {
    throw ConfigError("discretize: junction width 2*delta_x = " + std::to_string(2.0 * delta_x) +
                      " does not fit " + std::to_string(junction_count) +
                      " junctions in domain width " + std::to_string(span));
  }
  // Junction left edges; a single junction is centered, otherwise the set of
  // junctions spans the domain edge to edge with uniform spacing.
  std::vector<double> left_edges(junction_count);
  if (junction_count == 1) {
    left_edges[0] = profile.x_min + span / 2.0 - delta_x;
  } else {
    const double spacing = (span - 2.0 * delta_x) / (junction_count - 1);
    for (int j = 0; j < junction_count; ++j) {
      left_edges[j] = profile.x_min + j * spacing;
    }
  }

  std::vector<double> breaks;
  std::vector<double> vs;
  std::vector<double> ms;
  breaks.reserve(2 * junction_count);
  vs.reserve(2 * junction_count + 1);
  ms.reserve(2 * junction_count + 1);

  vs.push_back(profile.v_left);
  ms.push_back(profile.mass(profile.x_min));
  for (int j = 0; j < junction_count; ++j) {
    const double l = left_edges[j];
    const double r = l + 2.0 * delta_x;
    breaks.push_back(l);
    breaks.push_back(r);
    vs.push_back(profile.potential(l + delta_x));
    ms.push_back(profile.mass(l + delta_x));
    if (j + 1 < junction_count) {
      const double mid = (r + left_edges[j + 1]) / 2.0;
      vs.push_back(profile.potential(mid));
      ms.push_back(profile.mass(mid));
    }
  }
  vs.push_back(profile.v_right);
  ms.push_back(profile.mass(profile.x_max));

  return SegmentedProfile(std::move(breaks), std::move(vs), std::move(ms), delta_x, hbar);
}

}  // namespace qtm
