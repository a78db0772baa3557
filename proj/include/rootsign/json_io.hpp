#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "rootsign/error.hpp"

namespace rootsign::io {

using json = nlohmann::json;

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& what) {
  fail(ErrorKind::parse_error, "at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::parse_error, std::string("malformed JSON: ") + e.what());
  }
}

inline std::int64_t as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) parse_fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) parse_fail(where, "expected a string");
  return j.get<std::string>();
}

inline bool as_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) parse_fail(where, "expected a boolean");
  return j.get<bool>();
}

inline const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array");
  return j;
}

inline std::vector<std::int64_t> as_int_array(const json& j, const std::string& where) {
  as_array(j, where);
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], where + "/" + std::to_string(i)));
  return out;
}

/// Strict object access: every key must be consumed, unknown keys are an error.
class Fields {
 public:
  Fields(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) parse_fail(where_, "expected an object");
  }

  const json& required(const std::string& key) {
    used_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) parse_fail(where_, "missing field \"" + key + "\"");
    return *it;
  }

  const json* optional(const std::string& key) {
    used_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::string at(const std::string& key) const { return where_ + "/" + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) parse_fail(where_, "unknown field \"" + it.key() + "\"");
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> used_;
};

}  // namespace rootsign::io
