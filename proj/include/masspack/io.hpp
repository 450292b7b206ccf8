#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "masspack/circle.hpp"
#include "masspack/dual_cover.hpp"
#include "masspack/gauge.hpp"
#include "masspack/packer.hpp"
#include "masspack/verifier.hpp"

namespace masspack::io {

using nlohmann::json;

// Finite numbers as JSON numbers, +inf as the string "inf".
json number_to_json(double v);
double number_from_json(const json& j);

json to_json(const CellField& field);
// {"n":..., "m":..., "values":[...]}; "inf" strings allowed.
CellField cell_field_from_json(const json& j);

json to_json(const DyadicCube& c);  // [level, [i0, i1, ...]]
DyadicCube cube_from_json(const json& j);

json to_json(const PackResult& r);
PackResult pack_result_from_json(const json& j);

json to_json(const SemiCover& c);
SemiCover semicover_from_json(const json& j);

json to_json(const ViolationReport& r);
json to_json(const RegularityReport& r);
json to_json(const SplittingReport& r);

// Reads a roof; throws ValidationError on malformed content.
RoofGrid load_roof(const std::string& path);
// Accepts either a cell-field document or a pack result (uses its "f").
MassFunction load_mass_function(const std::string& path);
json load_json(const std::string& path);
void write_json(const std::string& path, const json& j);

// "i0,...,i{n-1},value" header, then one row per cell in row-major order.
void write_cell_field_csv(std::ostream& os, const CellField& field);

// Numeric CSV readers; blank lines, '#' comments and a non-numeric header
// line are skipped.
std::vector<std::pair<double, double>> read_two_column_csv(const std::string& path);
std::vector<double> read_one_column_csv(const std::string& path);
void write_one_column_csv(const std::string& path, const std::vector<double>& values);

// power:<alpha>[:<scale>] | log | density:<file> | table:<file>.
// Builtins get the requested domain; tables must reach it.
Gauge parse_gauge_spec(const std::string& spec, double domain_max);

}  // namespace masspack::io
