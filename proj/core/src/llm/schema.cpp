#include "ontoekg/llm/schema.hpp"

#include <algorithm>

namespace ontoekg::llm {

namespace {

using nlohmann::json;

bool type_matches(const std::string& type, const json& value) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "number") return value.is_number();
  if (type == "integer") return value.is_number_integer();
  if (type == "null") return value.is_null();
  return false;
}

std::optional<std::string> check(const json& schema, const json& value, const std::string& where) {
  const std::string at = where.empty() ? "/" : where;
  if (auto it = schema.find("type"); it != schema.end()) {
    bool ok = false;
    if (it->is_string()) {
      ok = type_matches(it->get<std::string>(), value);
    } else if (it->is_array()) {
      ok = std::any_of(it->begin(), it->end(), [&](const json& t) {
        return t.is_string() && type_matches(t.get<std::string>(), value);
      });
    }
    if (!ok) return at + ": expected " + it->dump() + ", got " + value.type_name();
  }
  if (auto it = schema.find("enum"); it != schema.end() && it->is_array()) {
    if (std::find(it->begin(), it->end(), value) == it->end()) {
      return at + ": value " + value.dump() + " is not one of " + it->dump();
    }
  }
  if (value.is_object()) {
    const json* props = nullptr;
    if (auto it = schema.find("properties"); it != schema.end() && it->is_object()) props = &*it;
    if (auto it = schema.find("required"); it != schema.end() && it->is_array()) {
      for (const auto& key : *it) {
        if (key.is_string() && !value.contains(key.get<std::string>())) {
          return at + ": missing required field \"" + key.get<std::string>() + "\"";
        }
      }
    }
    const bool closed = schema.value("additionalProperties", true) == false;
    for (const auto& [key, child] : value.items()) {
      const std::string path = where + "/" + key;
      if (props != nullptr && props->contains(key)) {
        if (auto err = check(props->at(key), child, path)) return err;
      } else if (closed) {
        return path + ": unknown field \"" + key + "\"";
      }
    }
  }
  if (value.is_array()) {
    if (auto it = schema.find("items"); it != schema.end() && it->is_object()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (auto err = check(*it, value[i], where + "/" + std::to_string(i))) return err;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> schema_violation(const json& schema, const json& value) {
  return check(schema, value, "");
}

}  // namespace ontoekg::llm
