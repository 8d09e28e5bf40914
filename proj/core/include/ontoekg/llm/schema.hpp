#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace ontoekg::llm {

/// Checks `value` against the JSON-Schema subset used for structured
/// output: type (object, array, string, boolean, number, integer, null),
/// properties, required, additionalProperties (boolean), items and enum.
/// Returns a message naming the first offending JSON pointer, or nullopt.
std::optional<std::string> schema_violation(const nlohmann::json& schema,
                                            const nlohmann::json& value);

}  // namespace ontoekg::llm
