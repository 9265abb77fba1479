#pragma once

#include <string>

#include "run_config.hpp"

namespace turbmix::cli {

/// Exit codes: 0 success, 1 validation failure, 2 configuration error.
int cmd_spectra(const RunConfig& config);
int cmd_mixture(const RunConfig& config);
int cmd_synthesize(const RunConfig& config);
int cmd_estimate(const RunConfig& config);
int cmd_validate(const RunConfig& config);

}  // namespace turbmix::cli
