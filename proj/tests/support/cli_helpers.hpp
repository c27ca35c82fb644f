#pragma once

// Helpers shared by the CLI test and the acceptance suite: spawning the
// built binary, and a minimal JSON-schema checker covering the subset of
// draft-07 used by schema/result.v1.json (type, required, properties,
// items, enum, const, oneOf).

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cli_support {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

inline RunResult run_command(const std::string& cmd) {
  std::array<char, 4096> buffer{};
  RunResult res;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed for: " + cmd);
  while (std::fgets(buffer.data(), static_cast<int>(buffer.size()), pipe) != nullptr)
    res.output += buffer.data();
  const int status = pclose(pipe);
  res.exit_code = (status >= 256) ? status / 256 : status;  // WEXITSTATUS
  return res;
}

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline bool validate_schema(const nlohmann::json& doc, const nlohmann::json& schema,
                            std::string* error) {
  using nlohmann::json;
  if (schema.contains("const")) {
    if (doc != schema["const"]) {
      if (error) *error = "const mismatch: " + doc.dump();
      return false;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& v : schema["enum"])
      if (doc == v) found = true;
    if (!found) {
      if (error) *error = "enum mismatch: " + doc.dump();
      return false;
    }
  }
  if (schema.contains("type")) {
    const std::string type = schema["type"].get<std::string>();
    bool ok = true;
    if (type == "object")
      ok = doc.is_object();
    else if (type == "array")
      ok = doc.is_array();
    else if (type == "string")
      ok = doc.is_string();
    else if (type == "boolean")
      ok = doc.is_boolean();
    else if (type == "integer")
      ok = doc.is_number_integer();
    else if (type == "number")
      ok = doc.is_number();
    if (!ok) {
      if (error) *error = "type '" + type + "' mismatch at " + doc.dump().substr(0, 60);
      return false;
    }
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) {
      if (!doc.contains(key.get<std::string>())) {
        if (error) *error = "missing required key " + key.get<std::string>();
        return false;
      }
    }
  }
  if (schema.contains("properties") && doc.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (doc.contains(key) && !validate_schema(doc.at(key), sub, error)) {
        if (error) *error = "property '" + key + "': " + *error;
        return false;
      }
    }
  }
  if (schema.contains("items") && doc.is_array()) {
    for (const auto& el : doc)
      if (!validate_schema(el, schema["items"], error)) return false;
  }
  if (schema.contains("oneOf")) {
    int matches = 0;
    for (const auto& branch : schema["oneOf"]) {
      std::string scratch;
      if (validate_schema(doc, branch, &scratch)) ++matches;
    }
    if (matches != 1) {
      if (error) *error = "oneOf matched " + std::to_string(matches) + " branches";
      return false;
    }
  }
  return true;
}

inline bool validate_result(const std::string& json_text, std::string* error) {
  const auto doc = nlohmann::json::parse(json_text);
  const auto schema =
      nlohmann::json::parse(read_file(std::string(TAVIS_SCHEMA_DIR) + "/result.v1.json"));
  return validate_schema(doc, schema, error);
}

}  // namespace cli_support
