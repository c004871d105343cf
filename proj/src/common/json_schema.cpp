// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/common/json_schema.hpp"

#include <algorithm>
#include <regex>

namespace defexam {

using nlohmann::json;

namespace {

bool has_type(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

void validate(const json& schema, const json& value, const std::string& path,
              std::vector<std::string>& errors) {
  if (!schema.is_object()) return;
  const auto where = path.empty() ? std::string("/") : path;

  if (auto it = schema.find("type"); it != schema.end()) {
    bool ok = false;
    if (it->is_string()) {
      ok = has_type(value, it->get<std::string>());
    } else if (it->is_array()) {
      for (const auto& t : *it) ok = ok || (t.is_string() && has_type(value, t.get<std::string>()));
    }
    if (!ok) {
      errors.push_back(where + ": expected type " + it->dump() + ", got " + value.type_name());
      return;
    }
  }

  if (auto it = schema.find("enum"); it != schema.end() && it->is_array()) {
    if (std::find(it->begin(), it->end(), value) == it->end()) {
      errors.push_back(where + ": value " + value.dump() + " not in enum");
    }
  }

  if (auto it = schema.find("pattern"); it != schema.end() && value.is_string()) {
    if (!std::regex_search(value.get<std::string>(), std::regex(it->get<std::string>()))) {
      errors.push_back(where + ": " + value.dump() + " does not match " + it->dump());
    }
  }

  if (auto it = schema.find("minimum"); it != schema.end() && value.is_number()) {
    if (value.get<double>() < it->get<double>()) {
      errors.push_back(where + ": " + value.dump() + " below minimum " + it->dump());
    }
  }

  if (auto it = schema.find("anyOf"); it != schema.end() && it->is_array()) {
    bool any = false;
    for (const auto& option : *it) {
      std::vector<std::string> sub;
      validate(option, value, path, sub);
      if (sub.empty()) {
        any = true;
        break;
      }
    }
    if (!any) errors.push_back(where + ": " + value.dump() + " matches no anyOf alternative");
  }

  if (value.is_object()) {
    const auto props = schema.value("properties", json::object());
    for (const auto& name : schema.value("required", json::array())) {
      if (!value.contains(name.get<std::string>())) {
        errors.push_back(where + ": missing required property " + name.dump());
      }
    }
    for (const auto& [key, sub] : value.items()) {
      if (auto p = props.find(key); p != props.end()) {
        validate(*p, sub, path + "/" + key, errors);
      } else if (schema.value("additionalProperties", true) == false) {
        errors.push_back(where + ": unexpected property \"" + key + "\"");
      }
    }
  }

  if (value.is_array()) {
    if (auto items = schema.find("items"); items != schema.end()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        validate(*items, value[i], path + "/" + std::to_string(i), errors);
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_json_schema(const json& schema, const json& value) {
  std::vector<std::string> errors;
  validate(schema, value, "", errors);
  return errors;
}

}  // namespace defexam
