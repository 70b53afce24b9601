#include "cli/commands.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "qtm/closed_form.hpp"
#include "qtm/laplace.hpp"
#include "qtm/transfer.hpp"
#include "qtm/validate.hpp"

namespace qtm::cli {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Format format_of(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw ConfigError("config: key 'format' must be csv or json, got '" + name + "'");
}

SegmentedProfile segment_from_config(const RunConfig& config, const PotentialProfile& profile) {
  const int junctions = config.get_int("junctions");
  const double delta_x = config.get_double("delta_x", 0.02);
  const double hbar = config.get_double("hbar", 1.0);
  if (junctions < 1) throw ConfigError("config: key 'junctions' must be at least 1");
  if (!(delta_x > 0.0)) throw ConfigError("config: key 'delta_x' must be positive");
  if (!(hbar > 0.0)) throw ConfigError("config: key 'hbar' must be positive");
  return discretize(profile, junctions, delta_x, hbar);
}

// Sample grid for a bound level: the profile domain padded by four decay
// lengths of that level.
std::vector<double> level_grid(const SegmentedProfile& seg, double energy, int points) {
  const double kappa = std::sqrt(2.0 * seg.masses.front() *
                                 std::max(seg.asymptote_min() - energy, 1e-12)) /
                       seg.hbar;
  const double pad = 4.0 / kappa;
  const double lo = seg.breakpoints.front() - pad;
  const double hi = seg.breakpoints.back() + pad;
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = lo + (hi - lo) * i / (points - 1);
  return grid;
}

}  // namespace

Format parse_format(const std::string& name) { return format_of(name); }

void run_sweep(const RunConfig& config, Format format, std::ostream& out, std::ostream& diag) {
  (void)diag;
  const PotentialProfile profile = make_profile(config);
  const SegmentedProfile seg = segment_from_config(config, profile);
  const std::vector<double> grid = energy_grid(config);
  config.finish_validation();
  const auto points = transmission_spectrum(seg, grid);
  if (format == Format::Csv) {
    out << "# qtm1d sweep: potential=" << profile.source_name
        << " regions=" << seg.region_count() << "\n";
    out << "# columns: E [energy], T [probability], R [probability], below_asymptote [0/1]\n";
    out << "E,T,R,below_asymptote\n";
    for (const auto& p : points) {
      out << num(p.energy) << ',' << num(p.transmission) << ',' << num(p.reflection) << ','
          << (p.below_asymptote ? 1 : 0) << "\n";
    }
    return;
  }
  json rows = json::array();
  for (const auto& p : points) {
    rows.push_back({{"E", p.energy},
                    {"T", p.transmission},
                    {"R", p.reflection},
                    {"below_asymptote", p.below_asymptote}});
  }
  out << json{{"command", "sweep"}, {"potential", profile.source_name}, {"rows", rows}}.dump(2)
      << "\n";
}

void run_bound(const RunConfig& config, Format format, std::ostream& out, std::ostream& diag) {
  const PotentialProfile profile = make_profile(config);
  const SegmentedProfile seg = segment_from_config(config, profile);
  const int scan_points = config.get_int("scan_points", 2000);
  const int sample_points = config.get_int("x_points", 801);
  const bool with_oracle = config.get_flag("oracle", false);
  const int oracle_points = config.get_int("oracle_grid_points", 2000);
  const bool rect_well = profile.source_name == "rectangular" && seg.v_min() < 0.0 &&
                         config.get_double("v0", 0.0) < 0.0;
  config.finish_validation();

  std::vector<double> levels;
  if (seg.v_min() < seg.asymptote_min()) {
    levels = eigenvalues(seg, scan_points);
  } else {
    diag << "warning: profile has no well below the asymptotic potentials; empty report\n";
  }
  if (levels.empty() && seg.v_min() < seg.asymptote_min()) {
    diag << "warning: no bound states found in the scan window\n";
  }

  std::vector<double> rect_reference;
  if (rect_well) {
    const RectangularWellSpec spec(-seg.v_min(), profile.x_max - profile.x_min,
                                   seg.masses[1], seg.hbar);
    rect_reference = rect_well_eigenvalues(spec);
  }
  std::vector<double> oracle_reference;
  if (with_oracle && !levels.empty()) {
    oracle_reference = direct_ode_eigenvalues(profile, oracle_points, seg.hbar);
  }

  std::vector<int> nodes(levels.size(), 0);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto grid = level_grid(seg, levels[i], sample_points);
    nodes[i] = eigenfunction(seg, levels[i], grid).node_count;
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (format == Format::Csv) {
    out << "# qtm1d bound: potential=" << profile.source_name << " junctions="
        << seg.junction_count() << "\n";
    out << "# columns: level, nodes, E_absolute [energy], E_above_bottom [energy]";
    if (rect_well) out << ", E_rect_analytic [energy]";
    if (with_oracle) out << ", E_ode_oracle [energy]";
    out << "\n";
    out << "level,nodes,E_absolute,E_above_bottom";
    if (rect_well) out << ",E_rect_analytic";
    if (with_oracle) out << ",E_ode_oracle";
    out << "\n";
    for (std::size_t i = 0; i < levels.size(); ++i) {
      out << i << ',' << nodes[i] << ',' << num(levels[i]) << ','
          << num(levels[i] - seg.v_min());
      if (rect_well) out << ',' << num(i < rect_reference.size() ? rect_reference[i] : nan);
      if (with_oracle) {
        out << ',' << num(i < oracle_reference.size() ? oracle_reference[i] : nan);
      }
      out << "\n";
    }
    return;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    json row{{"level", i},
             {"nodes", nodes[i]},
             {"E_absolute", levels[i]},
             {"E_above_bottom", levels[i] - seg.v_min()}};
    if (rect_well && i < rect_reference.size()) row["E_rect_analytic"] = rect_reference[i];
    if (with_oracle && i < oracle_reference.size()) row["E_ode_oracle"] = oracle_reference[i];
    rows.push_back(row);
  }
  out << json{{"command", "bound"}, {"potential", profile.source_name}, {"rows", rows}}.dump(2)
      << "\n";
}

void run_eigenfunction(const RunConfig& config, Format format, std::ostream& out,
                       std::ostream& diag) {
  (void)diag;
  const PotentialProfile profile = make_profile(config);
  const SegmentedProfile seg = segment_from_config(config, profile);
  const int scan_points = config.get_int("scan_points", 2000);
  const int sample_points = config.get_int("x_points", 401);
  const int level = config.get_int("level");
  const bool rect_well = profile.source_name == "rectangular" && seg.v_min() < 0.0 &&
                         config.get_double("v0", 0.0) < 0.0;
  config.finish_validation();

  const std::vector<double> levels =
      seg.v_min() < seg.asymptote_min() ? eigenvalues(seg, scan_points) : std::vector<double>{};
  if (level < 0 || level >= static_cast<int>(levels.size())) {
    throw ConfigError("config: key 'level' = " + std::to_string(level) +
                      " out of range; available levels: 0.." +
                      (levels.empty() ? std::string("none")
                                      : std::to_string(levels.size() - 1)));
  }
  const auto grid = level_grid(seg, levels[level], sample_points);
  const BoundState state = eigenfunction(seg, levels[level], grid);

  std::vector<double> overlay;
  if (rect_well) {
    const RectangularWellSpec spec(-seg.v_min(), profile.x_max - profile.x_min, seg.masses[1],
                                   seg.hbar);
    const auto rect_levels = rect_well_eigenvalues(spec);
    if (level < static_cast<int>(rect_levels.size())) {
      const auto rect_psi = rect_well_eigenfunction(spec, level);
      overlay.resize(grid.size());
      double dot = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        overlay[i] = rect_psi(grid[i]);
        dot += overlay[i] * state.values[i];
      }
      if (dot < 0.0) {
        for (double& v : overlay) v = -v;
      }
    }
  }

  if (format == Format::Csv) {
    out << "# qtm1d eigenfunction: level=" << level << " E_absolute=" << num(state.energy)
        << " E_above_bottom=" << num(state.energy_above_bottom) << " nodes="
        << state.node_count << "\n";
    out << "# columns: x [length], psi [1/sqrt(length)]";
    if (!overlay.empty()) out << ", psi_rect [1/sqrt(length)]";
    out << "\n";
    out << "x,psi";
    if (!overlay.empty()) out << ",psi_rect";
    out << "\n";
    for (std::size_t i = 0; i < state.grid.size(); ++i) {
      out << num(state.grid[i]) << ',' << num(state.values[i]);
      if (!overlay.empty()) out << ',' << num(overlay[i]);
      out << "\n";
    }
    return;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < state.grid.size(); ++i) {
    json row{{"x", state.grid[i]}, {"psi", state.values[i]}};
    if (!overlay.empty()) row["psi_rect"] = overlay[i];
    rows.push_back(row);
  }
  out << json{{"command", "eigenfunction"},
              {"level", level},
              {"E_absolute", state.energy},
              {"E_above_bottom", state.energy_above_bottom},
              {"nodes", state.node_count},
              {"rows", rows}}
             .dump(2)
      << "\n";
}

void run_closed_form(const RunConfig& config, Format format, std::ostream& out,
                     std::ostream& diag) {
  (void)diag;
  const double mass = config.get_double("mass", 1.0);
  const double hbar = config.get_double("hbar", 1.0);
  const double v0 = config.get_double("v0");
  const double delta_x = config.get_double("delta_x", 0.02);
  const double rect_half_width = config.get_double("rect_half_width", delta_x);
  const std::vector<double> grid = energy_grid(config);
  config.finish_validation();
  if (v0 < 0.0) {
    throw ConfigError("config: key 'v0' must be a non-negative strength for closed-form");
  }
  const UltraShortParams params(mass, hbar, v0, delta_x);

  const auto bound = bound_energy_ultrashort(params);
  const double k0 = params.delta_strength();
  const double dirac_energy = k0 > 0.0 ? -mass * k0 * k0 / (2.0 * hbar * hbar) : 0.0;
  const double t_peak = ramsauer_peak_transmission(params);
  const double t_resonance =
      v0 > 0.0 ? transmission_barrier_ultrashort(params, v0).transmission : 1.0;

  if (format == Format::Csv) {
    out << "# qtm1d closed-form: m=" << num(mass) << " hbar=" << num(hbar) << " V0=" << num(v0)
        << " delta_x=" << num(delta_x) << "\n";
    out << "# k0=" << num(k0) << "\n";
    out << "# bound_energy=" << (bound.bound ? num(bound.energy) : std::string("none"))
        << "\n";
    out << "# dirac_bound_energy=" << num(dirac_energy) << "\n";
    out << "# ramsauer_peak_T=" << num(t_peak) << " at E=V0\n";
    out << "# barrier_resonance_T=" << num(t_resonance) << " at E=V0\n";
    out << "# columns: E [energy], T_barrier, R_barrier, T_well, R_well, T_rect"
           " (rectangle half-width "
        << num(rect_half_width) << ")\n";
    out << "E,T_barrier,R_barrier,T_well,R_well,T_rect\n";
    for (double e : grid) {
      if (!(e > 0.0)) continue;  // scattering formulas live on E > 0
      const auto barrier = transmission_barrier_ultrashort(params, e);
      const auto well = transmission_well_ultrashort(params, e);
      const double rect = transmission_rectangular(mass, hbar, v0, rect_half_width, e);
      out << num(e) << ',' << num(barrier.transmission) << ',' << num(barrier.reflection) << ','
          << num(well.transmission) << ',' << num(well.reflection) << ',' << num(rect) << "\n";
    }
    return;
  }
  json summary{{"k0", k0},
               {"dirac_bound_energy", dirac_energy},
               {"ramsauer_peak_T", t_peak},
               {"barrier_resonance_T", t_resonance}};
  if (bound.bound) {
    summary["bound_energy"] = bound.energy;
  } else {
    summary["bound_energy"] = nullptr;
  }
  json rows = json::array();
  for (double e : grid) {
    if (!(e > 0.0)) continue;
    const auto barrier = transmission_barrier_ultrashort(params, e);
    const auto well = transmission_well_ultrashort(params, e);
    rows.push_back({{"E", e},
                    {"T_barrier", barrier.transmission},
                    {"R_barrier", barrier.reflection},
                    {"T_well", well.transmission},
                    {"R_well", well.reflection},
                    {"T_rect", transmission_rectangular(mass, hbar, v0, rect_half_width, e)}});
  }
  out << json{{"command", "closed-form"}, {"summary", summary}, {"rows", rows}}.dump(2) << "\n";
}

void run_laplace(const RunConfig& config, Format format, std::ostream& out, std::ostream& diag) {
  (void)diag;
  const double mass = config.get_double("mass", 1.0);
  const double hbar = config.get_double("hbar", 1.0);
  const double v0 = config.get_double("v0");
  const double delta_x = config.get_double("delta_x", 0.02);
  const double s_re = config.get_double("s_re");
  const double s_im = config.get_double("s_im", 0.0);
  const double center = config.get_double("packet_center");
  const double sigma = config.get_double("packet_sigma");
  const double k0 = config.get_double("packet_k0", 0.0);
  const double x_min = config.get_double("x_min");
  const double x_max = config.get_double("x_max");
  const int x_points = config.get_int("x_points", 201);
  config.finish_validation();
  if (!(s_re > 0.0)) throw ConfigError("config: key 's_re' must be positive");
  if (!(x_min < x_max)) throw ConfigError("config: key 'x_min' must be below key 'x_max'");
  if (x_points < 2) throw ConfigError("config: key 'x_points' must be at least 2");

  const LaplaceQuery query(mass, hbar, v0, delta_x);
  const InitialPacket packet = gaussian_packet(center, sigma, k0);
  const std::complex<double> s{s_re, s_im};

  // Initial-value-theorem diagnostic at the packet center.
  double ivt[3];
  {
    int i = 0;
    for (double sv : {1e2, 1e3, 1e4}) {
      const auto value = psi_laplace(center, {sv, 0.0}, packet, query);
      ivt[i++] = std::abs(sv * value - packet.amplitude(center));
    }
  }

  if (format == Format::Csv) {
    out << "# qtm1d laplace: m=" << num(mass) << " hbar=" << num(hbar) << " v0=" << num(v0)
        << " delta_x=" << num(delta_x) << " s=" << num(s_re) << "+" << num(s_im) << "i\n";
    out << "# ivt_error_s1e2=" << num(ivt[0]) << " ivt_error_s1e3=" << num(ivt[1])
        << " ivt_error_s1e4=" << num(ivt[2]) << "\n";
    out << "# columns: x [length], psi_re, psi_im\n";
    out << "x,psi_re,psi_im\n";
    for (int i = 0; i < x_points; ++i) {
      const double x = x_min + (x_max - x_min) * i / (x_points - 1);
      const auto value = psi_laplace(x, s, packet, query);
      out << num(x) << ',' << num(value.real()) << ',' << num(value.imag()) << "\n";
    }
    return;
  }
  json rows = json::array();
  for (int i = 0; i < x_points; ++i) {
    const double x = x_min + (x_max - x_min) * i / (x_points - 1);
    const auto value = psi_laplace(x, s, packet, query);
    rows.push_back({{"x", x}, {"psi_re", value.real()}, {"psi_im", value.imag()}});
  }
  out << json{{"command", "laplace"},
              {"ivt_errors", {ivt[0], ivt[1], ivt[2]}},
              {"rows", rows}}
             .dump(2)
      << "\n";
}

}  // namespace qtm::cli
