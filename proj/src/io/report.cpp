#include "wps/io/report.hpp"

#include <cmath>

#include "wps/errors.hpp"

namespace wps::io {

std::string tool_version() { return "wps 0.1.0"; }

json meta_block(std::uint64_t seed, const json& config_echo) {
  json meta;
  meta["tool"] = tool_version();
  meta["seed"] = seed;
  meta["config"] = config_echo;
  return meta;
}

MetaLines meta_lines(const json& meta) {
  MetaLines lines;
  for (const auto& [key, value] : meta.items()) {
    lines.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
  }
  return lines;
}

namespace {

// The stock serializer prints doubles in shortest-round-trip form, which
// can run to 17 digits; result values promise 6-significant-digit
// scientific notation instead, so this walker owns their formatting. The
// meta block is the reproducibility record, so its numbers keep full
// precision (exact_floats).
void dump_node(std::string& out, const json& node, int depth, bool exact_floats) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
  if (node.is_object()) {
    if (node.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : node.items()) {
      if (!first) {
        out += ",\n";
      }
      first = false;
      out += pad_in + json(key).dump() + ": ";
      dump_node(out, value, depth + 1, exact_floats);
    }
    out += "\n" + pad + "}";
  } else if (node.is_array()) {
    if (node.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    bool first = true;
    for (const auto& value : node) {
      if (!first) {
        out += ",\n";
      }
      first = false;
      out += pad_in;
      dump_node(out, value, depth + 1, exact_floats);
    }
    out += "\n" + pad + "]";
  } else if (node.is_number_float() && !exact_floats) {
    const double v = node.get<double>();
    out += std::isfinite(v) ? sci6(v) : "null";
  } else {
    out += node.dump();  // strings (escaped), integers, exact floats, ...
  }
}

}  // namespace

void write_report(const std::filesystem::path& path, const json& meta, const json& values) {
  std::string text = "{\n  \"meta\": ";
  dump_node(text, meta, 1, /*exact_floats=*/true);
  for (const auto& [key, value] : values.items()) {
    text += ",\n  " + json(key).dump() + ": ";
    dump_node(text, value, 1, /*exact_floats=*/false);
  }
  text += "\n}\n";
  write_file(path, [&text](std::ostream& os) { os << text; });
}

}  // namespace wps::io
