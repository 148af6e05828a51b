#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "geoflow/field.hpp"

namespace geoflow {

/// A named scalar column for CSV dumps.
using NamedField = std::pair<std::string, ScalarField>;

/// Formats with 17 significant digits (round-trips doubles exactly).
std::string format_double(double v);

/// Writes `x,y,<names>` rows in x-fastest order. All fields share one grid.
void write_csv(const std::filesystem::path& path, const std::vector<NamedField>& columns);

/// Expands a vector field into `<prefix>1,<prefix>2,<prefix>3` columns.
std::vector<NamedField> components_of(const std::string& prefix, const VectorField3& v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::filesystem::path& path);

/// Reads fields back from a file written by write_csv on the given grid.
std::vector<NamedField> read_fields_csv(const std::filesystem::path& path, const Grid2D& grid);

}  // namespace geoflow
