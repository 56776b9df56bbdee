#pragma once

#include <CLI11.hpp>

namespace tagwm::cli {

/// Registers embed, channel, extract, locate, evaluate, sweep and calibrate.
void add_commands(CLI::App& app);

}  // namespace tagwm::cli
