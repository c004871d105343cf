// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace defexam {

/// Validates `value` against a JSON schema restricted to the keywords used by
/// the shipped schemas: type, properties, required, additionalProperties
/// (boolean form), items, anyOf, enum, pattern, minimum. Returns one message
/// per violation, each prefixed with a JSON pointer; empty means valid.
std::vector<std::string> validate_json_schema(const nlohmann::json& schema,
                                              const nlohmann::json& value);

}  // namespace defexam
