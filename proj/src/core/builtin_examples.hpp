// Built-in example configurations. The source of truth is the JSON files
// under data/examples/, embedded verbatim at build time.
#pragma once

#include "serialize.hpp"

namespace mumford {

std::vector<std::string> builtin_example_names();

// Raw JSON of a built-in example; throws std::invalid_argument for unknown
// names.
const char* builtin_example_json(const std::string& name);

Config builtin_example(const std::string& name);

}  // namespace mumford
