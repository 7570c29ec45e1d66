#pragma once

#include "cli.hpp"

namespace majorana::cli {

/// Runs every oracle against the closed form it checks. Hard-gated checks
/// set Report::failed; the second-order sum only reports its trend.
Report run_verification(bool fast);

} // namespace majorana::cli
