#include "geoflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "geoflow/error.hpp"

namespace geoflow {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<NamedField>& columns) {
  if (columns.empty()) throw Error(ErrorCode::ConfigInvalid, "write_csv: no columns");
  const Grid2D& g = columns.front().second.grid();
  for (const auto& c : columns) require_same_grid(g, c.second.grid());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "x,y";
  for (const auto& c : columns) out << ',' << c.first;
  out << '\n';
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      out << format_double(g.x(i)) << ',' << format_double(g.y(j));
      for (const auto& c : columns) out << ',' << format_double(c.second(i, j));
      out << '\n';
    }
}

std::vector<NamedField> components_of(const std::string& prefix, const VectorField3& v) {
  return {{prefix + "1", component(v, 0)}, {prefix + "2", component(v, 1)},
          {prefix + "3", component(v, 2)}};
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) return t;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<NamedField> read_fields_csv(const std::filesystem::path& path, const Grid2D& grid) {
  const CsvTable t = read_csv(path);
  if (t.header.size() < 2 || t.rows.size() != grid.size())
    throw Error(ErrorCode::GridMismatch, "csv does not match grid: " + path.string());
  std::vector<NamedField> out;
  for (std::size_t c = 2; c < t.header.size(); ++c) {
    ScalarField f(grid);
    for (std::size_t k = 0; k < t.rows.size(); ++k) f[k] = t.rows[k].at(c);
    out.emplace_back(t.header[c], std::move(f));
  }
  return out;
}

}  // namespace geoflow
