#pragma once

#include <filesystem>
#include <string>

#include "mssc/core.hpp"

namespace mssc {

// Instance files are JSON:
//   {"n": int, "r": int, "initial": [element at position 1..n], "requests": [[ids], ...]}
// Errors name the offending field, e.g. "requests[3][1]", and parse errors
// carry the line and column reported by the JSON parser.
Instance parse_instance(const std::string& json_text);
Instance load_instance(const std::filesystem::path& path);

std::string instance_to_json(const Instance& instance);
void save_instance(const Instance& instance, const std::filesystem::path& path);

}  // namespace mssc
