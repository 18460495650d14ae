#pragma once

#include "decosim/cli/config.hpp"
#include "decosim/cli/envelope.hpp"

namespace decosim::cli {

/// Dispatches a resolved config to its domain module and builds the
/// result envelope (no file side effects; the caller renders/writes).
ResultEnvelope run_command(RunConfig config);

}  // namespace decosim::cli
