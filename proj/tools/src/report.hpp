#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

namespace hkink::cli {

using Json = nlohmann::ordered_json;

/// Pretty JSON in insertion order; floating-point numbers carry 17 significant
/// digits, non-finite ones become null.
std::string dump(const Json& j);

/// Writes `text` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace hkink::cli
