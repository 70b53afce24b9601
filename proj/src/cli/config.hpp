#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtm/profile.hpp"

namespace qtm::cli {

/// Flat key=value run configuration: a config file ('#' comments) merged with
/// command-line overrides. Every accessor failure names the offending key so
/// the CLI can report actionable errors (exit code 2).
class RunConfig {
 public:
  RunConfig() = default;

  /// Parse `key = value` lines; later duplicates win.
  static RunConfig from_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_flag(const std::string& key, bool fallback = false) const;

  /// Keys actually consumed by accessors; unknown leftovers are config errors.
  void finish_validation() const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;           // key -> config file line
  mutable std::vector<std::string> consumed_;  // for unknown-key detection

  std::string where(const std::string& key) const;
};

/// Build the potential profile selected by the `potential` key
/// (rectangular | gaussian | double-barrier | tabulated).
PotentialProfile make_profile(const RunConfig& config);

/// Uniform energy grid from e_min / e_max / e_points.
std::vector<double> energy_grid(const RunConfig& config);

}  // namespace qtm::cli
