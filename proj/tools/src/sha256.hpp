#pragma once

#include <string>

namespace geoflow::cli {

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

}  // namespace geoflow::cli
