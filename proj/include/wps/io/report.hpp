#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"

#include "wps/io/csv.hpp"

namespace wps::io {

/// Reports preserve insertion order so identical runs serialize
/// byte-identically.
using json = nlohmann::ordered_json;

/// "wps <semver>", embedded in every output file.
std::string tool_version();

/// Provenance carried by every output: tool version, RNG seed and the
/// configuration the run actually used.
json meta_block(std::uint64_t seed, const json& config_echo);

/// The same provenance flattened to '# key: value' CSV comment lines
/// (nested values collapse to compact JSON).
MetaLines meta_lines(const json& meta);

/// Writes {"meta": ..., <values>} as indented JSON. Result values print
/// in 6-significant-digit scientific notation (non-finite ones as null);
/// the meta block keeps full precision so a run can be reproduced from
/// its own output.
void write_report(const std::filesystem::path& path, const json& meta, const json& values);

}  // namespace wps::io
