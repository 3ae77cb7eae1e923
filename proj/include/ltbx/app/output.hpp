#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace ltbx::app {

/// Writes to a sibling temp file, flushes, then renames over `path`, so the
/// declared path holds either the old file or the complete new one.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// First line of every CSV artifact.
std::string csv_stamp(const std::string& command, const std::string& hash);

/// Stable JSON text: sorted keys, two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace ltbx::app
