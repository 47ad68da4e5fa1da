#pragma once

#include <string>

#include <json.hpp>

namespace topo {

// Serializes with insertion-order keys and every double rendered at 17
// significant digits, so identical runs produce byte-identical artifacts.
std::string dump_stable_json(const nlohmann::ordered_json& j, int indent = 2);

void write_json_file(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace topo
