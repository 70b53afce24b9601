#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "qtm/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  int junctions = -1;
  double delta_x = -1.0;
  bool oracle = false;
  int level = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Run configuration file (key = value lines)");
  cmd->add_option("--out", args.out_path, "Output path (stdout when omitted)");
  cmd->add_option("--format", args.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--junctions", args.junctions, "Override the junction count");
  cmd->add_option("--delta-x", args.delta_x, "Override the junction half-width");
  cmd->add_flag("--oracle", args.oracle, "Add finite-difference oracle columns");
  cmd->add_option("--level", args.level, "Bound level index (eigenfunction)");
}

qtm::cli::RunConfig load_config(const CommonArgs& args) {
  qtm::cli::RunConfig config;
  if (!args.config_path.empty()) {
    config = qtm::cli::RunConfig::from_file(args.config_path);
  }
  if (args.junctions >= 0) config.set("junctions", std::to_string(args.junctions));
  if (args.delta_x >= 0.0) config.set("delta_x", std::to_string(args.delta_x));
  if (args.oracle) config.set("oracle", "1");
  if (args.level >= 0) config.set("level", std::to_string(args.level));
  return config;
}

using Runner = void (*)(const qtm::cli::RunConfig&, qtm::cli::Format, std::ostream&,
                        std::ostream&);

int dispatch(const CommonArgs& args, Runner runner) {
  try {
    const qtm::cli::RunConfig config = load_config(args);
    const qtm::cli::Format format = qtm::cli::parse_format(args.format);
    std::ofstream file;
    if (!args.out_path.empty()) {
      file.open(args.out_path);
      if (!file) {
        std::cerr << "error: cannot open output file '" << args.out_path << "'\n";
        return kExitConfig;
      }
    }
    std::ostream& out = args.out_path.empty() ? std::cout : file;
    runner(config, format, out, std::cerr);
    return kExitOk;
  } catch (const qtm::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qtm::NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qtm1d: transmission spectra, bound states and eigenfunctions of 1D potentials\n"
      "via ultra-short-junction transfer matrices, with closed-form references and a\n"
      "Laplace-domain propagator."};
  app.require_subcommand(1);

  CommonArgs args;
  Runner runner = nullptr;

  auto* sweep = app.add_subcommand("sweep", "Transmission/reflection over an energy window");
  add_common(sweep, args);
  sweep->callback([&] { runner = qtm::cli::run_sweep; });

  auto* bound = app.add_subcommand("bound", "Bound eigenvalue report");
  add_common(bound, args);
  bound->callback([&] { runner = qtm::cli::run_bound; });

  auto* eigen = app.add_subcommand("eigenfunction", "Sampled bound eigenfunction");
  add_common(eigen, args);
  eigen->callback([&] { runner = qtm::cli::run_eigenfunction; });

  auto* closed = app.add_subcommand("closed-form", "Single ultra-short potential formulas");
  add_common(closed, args);
  closed->callback([&] { runner = qtm::cli::run_closed_form; });

  auto* laplace = app.add_subcommand("laplace", "Laplace-domain wavefunction of a packet");
  add_common(laplace, args);
  laplace->callback([&] { runner = qtm::cli::run_laplace; });

  CLI11_PARSE(app, argc, argv);
  return dispatch(args, runner);
}
