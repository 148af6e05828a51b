#include "schema.hpp"

#include <cmath>
#include <set>

#include <geoflow/error.hpp>

namespace geoflow::cli {

namespace {

bool finite_number(const json& v) { return v.is_number() && std::isfinite(v.get<double>()); }

bool matches(const json& v, Kind kind) {
  switch (kind) {
    case Kind::Number: return finite_number(v);
    case Kind::Integer: return v.is_number_integer();
    case Kind::Bool: return v.is_boolean();
    case Kind::String: return v.is_string();
    case Kind::Object: return v.is_object();
    case Kind::Array: return v.is_array();
    case Kind::Vec3:
      if (!v.is_array() || v.size() != 3) return false;
      for (const json& c : v)
        if (!finite_number(c)) return false;
      return true;
    case Kind::NumberList:
      if (!v.is_array() || v.empty()) return false;
      for (const json& c : v)
        if (!finite_number(c)) return false;
      return true;
  }
  return false;
}

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::Number: return "a finite number";
    case Kind::Integer: return "an integer";
    case Kind::Bool: return "a boolean";
    case Kind::String: return "a string";
    case Kind::Object: return "an object";
    case Kind::Array: return "an array";
    case Kind::Vec3: return "an array of 3 numbers";
    case Kind::NumberList: return "a non-empty array of numbers";
  }
  return "?";
}

}  // namespace

json normalize(const json& in, const std::vector<KeySpec>& keys, const std::string& where) {
  if (!in.is_object()) throw ConfigInvalid(where + ": expected an object");
  std::set<std::string> known;
  for (const KeySpec& k : keys) known.insert(k.key);
  for (auto it = in.begin(); it != in.end(); ++it)
    if (!known.count(it.key())) throw ConfigInvalid(where + ": unknown key '" + it.key() + "'");

  json out = json::object();
  for (const KeySpec& k : keys) {
    const auto it = in.find(k.key);
    if (it == in.end() || (it->is_null() && !k.required)) {
      if (k.required) throw ConfigInvalid(where + ": missing required key '" + k.key + "'");
      out[k.key] = k.fallback;
      continue;
    }
    if (!matches(*it, k.kind))
      throw ConfigInvalid(where + "." + k.key + ": expected " + kind_name(k.kind));
    out[k.key] = *it;
  }
  return out;
}

}  // namespace geoflow::cli
