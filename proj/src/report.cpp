#include "koz/report.hpp"

#include <cstdint>
#include <sstream>

namespace koz {

std::string fnv1a_digest(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  for (int i = 15; i >= 0; --i) os << ((h >> (4 * i)) & 0xf);
  return os.str();
}

namespace {

void render(const Json& j, const std::string& label, int depth, std::string& out) {
  std::string pad(static_cast<size_t>(depth) * 2, ' ');
  if (j.is_object()) {
    if (!label.empty()) out += pad + label + ":\n";
    for (const auto& [k, v] : j.items()) render(v, k, depth + (label.empty() ? 0 : 1), out);
    return;
  }
  if (j.is_array()) {
    bool flat = true;
    for (const auto& v : j)
      if (v.is_object() || v.is_array()) flat = false;
    if (flat) {
      std::string line;
      for (const auto& v : j) {
        if (!line.empty()) line += " ";
        line += v.is_string() ? v.get<std::string>() : v.dump();
      }
      out += pad + label + ": [" + line + "]\n";
    } else {
      out += pad + label + ":\n";
      int idx = 0;
      for (const auto& v : j) render(v, "[" + std::to_string(idx++) + "]", depth + 1, out);
    }
    return;
  }
  out += pad + label + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
}

}  // namespace

std::string render_human(const Json& j) {
  std::string out;
  render(j, "", 0, out);
  return out;
}

}  // namespace koz
