#pragma once

// Strict field access for JSON documents: missing or mistyped fields and
// unknown names raise ConfigError.

#include <initializer_list>
#include <set>
#include <string>
#include <type_traits>

#include <nlohmann/json.hpp>

#include "tabhash/error.hpp"

namespace tabhash::json_fields {

inline void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                           const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be a JSON object");
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!names.count(k)) throw ConfigError("unknown field '" + k + "' in " + what);
}

template <class T>
T as(const nlohmann::json& v, const std::string& name) {
  bool ok;
  if constexpr (std::is_same_v<T, bool>)
    ok = v.is_boolean();
  else if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>)
    ok = v.is_number_unsigned();
  else if constexpr (std::is_integral_v<T>)
    ok = v.is_number_integer();
  else if constexpr (std::is_floating_point_v<T>)
    ok = v.is_number();
  else if constexpr (std::is_same_v<T, std::string>)
    ok = v.is_string();
  else
    ok = true;
  if (!ok) throw ConfigError("field '" + name + "' has the wrong type");
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("field '" + name + "' has the wrong type");
  }
}

template <class T>
T required(const nlohmann::json& j, const std::string& name) {
  if (!j.contains(name)) throw ConfigError("missing field '" + name + "'");
  return as<T>(j.at(name), name);
}

template <class T>
T optional(const nlohmann::json& j, const std::string& name, T fallback) {
  return j.contains(name) ? as<T>(j.at(name), name) : std::move(fallback);
}

}  // namespace tabhash::json_fields
