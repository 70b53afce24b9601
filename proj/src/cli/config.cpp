#include "cli/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qtm/errors.hpp"

namespace qtm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open file '" + path + "'");
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: expected key = value at " + path + ":" +
                        std::to_string(line_no));
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config: empty key at " + path + ":" + std::to_string(line_no));
    }
    cfg.values_[key] = value;
    cfg.lines_[key] = line_no;
  }
  return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string RunConfig::where(const std::string& key) const {
  const auto it = lines_.find(key);
  if (it == lines_.end()) return "key '" + key + "'";
  return "key '" + key + "' (config line " + std::to_string(it->second) + ")";
}

std::string RunConfig::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("config: missing required key '" + key + "'");
  consumed_.push_back(key);
  return it->second;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  consumed_.push_back(key);
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key) const {
  const std::string text = get_string(key);
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw ConfigError("config: " + where(key) + " is not a number: '" + text + "'");
  }
  return value;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  consumed_.push_back(key);
  if (!has(key)) return fallback;
  return get_double(key);
}

int RunConfig::get_int(const std::string& key) const {
  const double value = get_double(key);
  const int rounded = static_cast<int>(value);
  if (static_cast<double>(rounded) != value) {
    throw ConfigError("config: " + where(key) + " must be an integer");
  }
  return rounded;
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  consumed_.push_back(key);
  if (!has(key)) return fallback;
  return get_int(key);
}

bool RunConfig::get_flag(const std::string& key, bool fallback) const {
  consumed_.push_back(key);
  if (!has(key)) return fallback;
  const std::string v = get_string(key);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("config: " + where(key) + " must be a boolean, got '" + v + "'");
}

void RunConfig::finish_validation() const {
  for (const auto& [key, value] : values_) {
    if (std::find(consumed_.begin(), consumed_.end(), key) == consumed_.end()) {
      throw ConfigError("config: unknown " + where(key));
    }
  }
}

PotentialProfile make_profile(const RunConfig& config) {
  const std::string kind = config.get_string("potential");
  const double mass = config.get_double("mass", 1.0);
  if (!(mass > 0.0)) throw ConfigError("config: key 'mass' must be positive");
  if (kind == "rectangular") {
    const double v0 = config.get_double("v0");
    const double width = config.get_double("width");
    if (!(width > 0.0)) throw ConfigError("config: key 'width' must be positive");
    return make_rectangular(v0, width, mass);
  }
  if (kind == "gaussian") {
    const double v0 = config.get_double("v0");
    const double width = config.get_double("width");
    if (!(width > 0.0)) throw ConfigError("config: key 'width' must be positive");
    const double x_min = config.get_double("x_min", 0.0);
    const double x_max = config.get_double("x_max", 0.0);
    if ((x_min != 0.0 || x_max != 0.0) && !(x_min < x_max)) {
      throw ConfigError("config: key 'x_min' must be below key 'x_max'");
    }
    return make_gaussian(v0, width, mass, x_min, x_max);
  }
  if (kind == "double-barrier") {
    const double v0 = config.get_double("v0");
    const double width = config.get_double("width");
    const double separation = config.get_double("separation");
    if (!(width > 0.0)) throw ConfigError("config: key 'width' must be positive");
    if (!(separation > 0.0)) throw ConfigError("config: key 'separation' must be positive");
    return make_double_barrier(v0, width, separation, mass);
  }
  if (kind == "tabulated") {
    const std::string path = config.get_string("potential_file");
    std::ifstream in(path);
    if (!in) {
      throw ConfigError("config: key 'potential_file': cannot open '" + path + "'");
    }
    return load_tabulated(parse_tabulated(in));
  }
  throw ConfigError(
      "config: key 'potential' must be one of rectangular, gaussian, double-barrier, "
      "tabulated; got '" +
      kind + "'");
}

std::vector<double> energy_grid(const RunConfig& config) {
  const double lo = config.get_double("e_min");
  const double hi = config.get_double("e_max");
  const int points = config.get_int("e_points", 200);
  if (!(lo < hi)) throw ConfigError("config: key 'e_min' must be below key 'e_max'");
  if (points < 1) throw ConfigError("config: key 'e_points' must be positive");
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  for (int i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * i / (points - 1);
  }
  return grid;
}

}  // namespace qtm::cli
