#pragma once

#include "glab/error.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace glab::io {

using Json = nlohmann::json;

/// Parses a JSON document; syntax errors report line and column.
inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') { ++line; col = 1; }
      else ++col;
    }
    throw ParseError(what + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json load_json(const std::string& path) { return parse_json(read_file(path), path); }

/// Field accessors with "where" paths in their error messages.
inline const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + "." + key + ": missing field");
  return *it;
}

inline std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

inline std::int64_t as_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

inline std::uint64_t as_positive(const Json& v, const std::string& where) {
  const auto i = as_int(v, where);
  if (i <= 0) throw ParseError(where + ": expected a positive integer");
  return static_cast<std::uint64_t>(i);
}

inline const Json& as_array(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  return v;
}

/// Rejects keys outside the allowed list.
inline void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) throw ParseError(where + "." + it.key() + ": unknown field");
  }
}

}  // namespace glab::io
