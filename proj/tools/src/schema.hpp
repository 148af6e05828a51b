#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace geoflow::cli {

using nlohmann::json;

enum class Kind { Number, Integer, Bool, String, Vec3, NumberList, Object, Array };

struct KeySpec {
  std::string key;
  Kind kind;
  json fallback;          ///< filled in when the key is absent
  bool required = false;  ///< absent key is an error
};

/// Checks `in` against `keys`: rejects unknown keys and wrong types, fills
/// defaults. Optional keys without a default stay null. `where` prefixes errors.
json normalize(const json& in, const std::vector<KeySpec>& keys, const std::string& where);

}  // namespace geoflow::cli
