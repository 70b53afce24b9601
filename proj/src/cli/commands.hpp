#pragma once

#include <iosfwd>
#include <string>

#include "cli/config.hpp"

namespace qtm::cli {

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

/// Subcommand drivers. Each writes its report to `out` and warnings to
/// `diag`, throwing ConfigError (exit 2) or NumericError / std::domain_error
/// (exit 3) on failure. Output is byte-deterministic for a fixed config.
void run_sweep(const RunConfig& config, Format format, std::ostream& out, std::ostream& diag);
void run_bound(const RunConfig& config, Format format, std::ostream& out, std::ostream& diag);
void run_eigenfunction(const RunConfig& config, Format format, std::ostream& out,
                       std::ostream& diag);
void run_closed_form(const RunConfig& config, Format format, std::ostream& out,
                     std::ostream& diag);
void run_laplace(const RunConfig& config, Format format, std::ostream& out, std::ostream& diag);

}  // namespace qtm::cli
