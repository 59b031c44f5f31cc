#pragma once

#include "json.hpp"

#include <string>

namespace koz {

using Json = nlohmann::json;

/// FNV-1a 64-bit digest of the raw input text, as fixed-width hex.
std::string fnv1a_digest(const std::string& data);

/// Human rendering derived from the machine tree (never computed separately).
std::string render_human(const Json& j);

}  // namespace koz
