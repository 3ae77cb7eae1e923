#pragma once

#include <filesystem>
#include <iosfwd>

#include "ltbx/app/config.hpp"

namespace ltbx::app {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3, kIdentityFailure = 4, kDivergence = 5 };

/// Runs one subcommand, writing its artifacts under out_dir and a short
/// summary to `log`. Library errors propagate as exceptions; map them with
/// exit_code_for.
int run(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// ConfigError -> 2, NumericalError -> 3, IdentityError -> 4, anything else -> 3.
int exit_code_for(const std::exception& e);

}  // namespace ltbx::app
