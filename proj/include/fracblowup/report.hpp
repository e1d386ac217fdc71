#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace fracblowup {

/// Stable FNV-1a hash of the canonical config serialization; embedded in
/// every verdict bundle so identical runs are byte-comparable.
uint64_t config_hash(const std::string& canonical);

std::string hash_hex(uint64_t h);

/// Writes JSON with a fixed layout (sorted keys, 2-space indent, '\n' eol).
void write_json(const nlohmann::json& j, const std::string& path);

/// Ensures a directory exists (single level ok, creates parents).
void ensure_directory(const std::string& path);

}  // namespace fracblowup
