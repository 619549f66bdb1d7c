#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "wps/io/report.hpp"

namespace wps::cli {

/// A validated run: the subcommand, its checked and defaulted parameter
/// document, and the common output/reproducibility knobs.
struct RunConfig {
  std::string command;
  io::json params;
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 0;
  int grid_n = 48;  // interior points per axis for gridded commands
  int order = 2;    // spatial stencil order, 2 or 4
};

/// Parses JSON text and validates it against the schema of `command`.
/// Unknown keys are rejected by their full path, missing required keys are
/// listed, and defaults are applied, so the returned params spell out the
/// run completely. The document may carry "command" (which must match the
/// subcommand) plus "out_dir", "seed", "grid_n" and "order" alongside the
/// per-command keys.
RunConfig parse_config(const std::string& text, const std::string& command);

/// Reads the file and delegates to parse_config; an unreadable path is an
/// input error.
RunConfig load_config(const std::filesystem::path& path, const std::string& command);

}  // namespace wps::cli
