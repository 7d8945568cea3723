#include "builtin_examples.hpp"

#include <stdexcept>

#include "builtin_examples_data.hpp"

namespace mumford {

std::vector<std::string> builtin_example_names() {
  std::vector<std::string> out;
  for (const auto& [name, json] : kBuiltinExamples) out.push_back(name);
  return out;
}

const char* builtin_example_json(const std::string& name) {
  for (const auto& [ename, json] : kBuiltinExamples)
    if (name == ename) return json;
  throw std::invalid_argument("unknown example '" + name +
                              "' (available: tate, theta1, theta3, shifted-theta, r10, mon-sep)");
}

Config builtin_example(const std::string& name) {
  return config_from_json(Json::parse(builtin_example_json(name)));
}

}  // namespace mumford
