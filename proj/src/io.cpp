#include "masspack/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "masspack/error.hpp"

namespace masspack::io {

json number_to_json(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  if (!std::isfinite(v)) throw ValidationError("cannot serialize a NaN or -inf value");
  return v;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && j.get<std::string>() == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  throw ValidationError("expected a number or \"inf\", got " + j.dump());
}

json to_json(const CellField& field) {
  json values = json::array();
  for (double v : field.values) values.push_back(number_to_json(v));
  return {{"n", field.n}, {"m", field.m}, {"values", std::move(values)}};
}

CellField cell_field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("m") || !j.contains("values")) {
    throw ValidationError("cell field JSON needs keys n, m and values");
  }
  std::vector<double> values;
  for (const auto& v : j.at("values")) values.push_back(number_from_json(v));
  return CellField(j.at("n").get<int>(), j.at("m").get<int>(), std::move(values));
}

json to_json(const DyadicCube& c) { return json::array({c.level, c.index}); }

DyadicCube cube_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ValidationError("cube must be [level, [index...]]");
  return DyadicCube{j[0].get<int>(), j[1].get<std::vector<std::uint32_t>>()};
}

namespace {

json cubes_to_json(const std::vector<DyadicCube>& cubes) {
  json out = json::array();
  for (const auto& c : cubes) out.push_back(to_json(c));
  return out;
}

std::vector<DyadicCube> cubes_from_json(const json& j) {
  std::vector<DyadicCube> out;
  for (const auto& c : j) out.push_back(cube_from_json(c));
  return out;
}

json grid_cube_json(const GridCube& c) { return {{"corner", c.corner}, {"side", c.side}}; }

}  // namespace

json to_json(const PackResult& r) {
  json trace = json::array();
  for (const auto& lt : r.trace) {
    json scaled = json::array();
    for (const auto& s : lt.scaled) scaled.push_back({{"cube", to_json(s.cube)}, {"c", s.c}});
    trace.push_back({{"level", lt.level}, {"scaled", std::move(scaled)}});
  }
  json f = json::array();
  json f_raw = json::array();
  for (double v : r.f.field.values) f.push_back(v);
  for (double v : r.f_raw.field.values) f_raw.push_back(v);
  return {{"n", r.f.field.n},
          {"m", r.f.field.m},
          {"f", std::move(f)},
          {"f_raw", std::move(f_raw)},
          {"bottlenecks", cubes_to_json(r.bottlenecks)},
          {"primal_value", r.primal_value},
          {"raw_value", r.raw_value},
          {"trace", std::move(trace)}};
}

PackResult pack_result_from_json(const json& j) {
  PackResult r;
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  r.f = MassFunction(CellField(n, m, j.at("f").get<std::vector<double>>()));
  r.f_raw = MassFunction(CellField(n, m, j.at("f_raw").get<std::vector<double>>()));
  r.bottlenecks = cubes_from_json(j.at("bottlenecks"));
  r.primal_value = j.at("primal_value").get<double>();
  r.raw_value = j.at("raw_value").get<double>();
  for (const auto& lt : j.at("trace")) {
    LevelTrace t{lt.at("level").get<int>(), {}};
    for (const auto& s : lt.at("scaled")) {
      t.scaled.push_back({cube_from_json(s.at("cube")), s.at("c").get<double>()});
    }
    r.trace.push_back(std::move(t));
  }
  return r;
}

json to_json(const SemiCover& c) {
  return {{"value", number_to_json(c.value)}, {"cover", cubes_to_json(c.cubes)}};
}

SemiCover semicover_from_json(const json& j) {
  return SemiCover{cubes_from_json(j.at("cover")), number_from_json(j.at("value"))};
}

json to_json(const ViolationReport& r) {
  json list = json::array();
  for (const auto& v : r.violations) {
    list.push_back({{"kind", v.kind == Violation::Kind::kPointwise ? "pointwise" : "mass"},
                    {"cube", grid_cube_json(v.cube)},
                    {"amount", number_to_json(v.amount)},
                    {"bound", number_to_json(v.bound)},
                    {"excess", number_to_json(v.excess)}});
  }
  return {{"scope", r.scope == Scope::kDyadic ? "dyadic" : "all"},
          {"exhaustive", r.exhaustive},
          {"cubes_checked", r.cubes_checked},
          {"violation_count", r.violation_count},
          {"ok", r.ok()},
          {"violations", std::move(list)}};
}

json to_json(const RegularityReport& r) {
  json out = {{"r1", r.r1},
              {"r2", r.r2},
              {"r2_ratios", r.r2_ratios},
              {"r3_ratios", r.r3_ratios},
              {"r3_min", r.r3_min},
              {"r3_max", r.r3_max}};
  if (r.r1_violation_at) out["r1_violation_at"] = *r.r1_violation_at;
  return out;
}

json to_json(const SplittingReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({
        {"N", e.N},
        {"gamma", e.gamma},
        {"gamma_warning", e.gamma_warning},
        {"skipped_arcs", e.skipped_arcs},
        {"premise_met_arcs", e.premise_met_arcs},
        {"H_at_zero", {e.value_at_zero.real(), e.value_at_zero.imag()}},
        {"weighted_integral", e.weighted_integral},
        {"sample_bound_applies", e.sample_bound_applies},
        {"sample_bound_ok", e.sample_bound_ok},
        {"growth_ratio_max", e.growth_ratio_max},
        {"radii", e.radii},
        {"growth_ratio_by_radius", e.growth_ratio_by_radius},
        {"poisson_constant", e.poisson_constant},
        {"disk_deviation", e.disk_deviation},
        {"boundary",
         {{"radius", e.boundary.radius},
          {"herglotz_max", e.boundary.herglotz_max},
          {"direct_max", e.boundary.direct_max},
          {"relative_gap", e.boundary.relative_gap}}},
        {"max_arc_ratio", e.max_arc_ratio},
    });
  }
  return {{"t", r.t}, {"eps", r.eps}, {"grid_size", r.grid_size}, {"entries", std::move(entries)}};
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << j.dump(2) << '\n';
}

RoofGrid load_roof(const std::string& path) {
  try {
    return RoofGrid(cell_field_from_json(load_json(path)));
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

MassFunction load_mass_function(const std::string& path) {
  const auto j = load_json(path);
  try {
    if (j.contains("values")) return MassFunction(cell_field_from_json(j));
    if (j.contains("f")) {
      return MassFunction(CellField(j.at("n").get<int>(), j.at("m").get<int>(),
                                    j.at("f").get<std::vector<double>>()));
    }
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
  throw ValidationError(path + ": expected a cell field or a pack result");
}

void write_cell_field_csv(std::ostream& os, const CellField& field) {
  for (int i = 0; i < field.n; ++i) os << 'i' << i << ',';
  os << "value\n";
  std::ostringstream num;
  num.precision(17);
  for (std::size_t c = 0; c < field.size(); ++c) {
    for (auto i : field.unflat(c)) os << i << ',';
    const double v = field.values[c];
    if (std::isinf(v)) {
      os << "inf\n";
    } else {
      num.str("");
      num << v;
      os << num.str() << '\n';
    }
  }
}

namespace {

std::vector<std::vector<double>> read_numeric_rows(const std::string& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (rows.empty()) continue;  // header
      throw ValidationError(path + ":" + std::to_string(lineno) + ": non-numeric value");
    }
    if (row.size() != columns) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected " +
                            std::to_string(columns) + " column(s)");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<std::pair<double, double>> read_two_column_csv(const std::string& path) {
  std::vector<std::pair<double, double>> out;
  for (const auto& r : read_numeric_rows(path, 2)) out.emplace_back(r[0], r[1]);
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i].first > out[i - 1].first)) {
      throw ValidationError(path + ": x column must be strictly ascending");
    }
  }
  return out;
}

std::vector<double> read_one_column_csv(const std::string& path) {
  std::vector<double> out;
  for (const auto& r : read_numeric_rows(path, 1)) out.push_back(r[0]);
  return out;
}

void write_one_column_csv(const std::string& path, const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out.precision(17);
  for (double v : values) out << v << '\n';
}

Gauge parse_gauge_spec(const std::string& spec, double domain_max) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "log") {
    if (!rest.empty()) throw ValidationError("log gauge takes no parameters");
    return Gauge::log_type(domain_max);
  }
  if (kind == "power") {
    const auto sep = rest.find(':');
    double alpha = 0.0;
    double scale = 1.0;
    try {
      std::size_t used = 0;
      alpha = std::stod(rest.substr(0, sep), &used);
      if (used != rest.substr(0, sep).size()) throw std::invalid_argument("trailing");
      if (sep != std::string::npos) scale = std::stod(rest.substr(sep + 1));
    } catch (const std::exception&) {
      throw ValidationError("malformed power gauge '" + spec + "'");
    }
    try {
      return Gauge::power(alpha, domain_max, scale);
    } catch (const DomainError& e) {
      throw ValidationError(e.what());
    }
  }
  if (kind == "table" || kind == "density") {
    if (rest.empty()) throw ValidationError(kind + " gauge needs a file path");
    const auto rows = read_two_column_csv(rest);
    Gauge g = kind == "table" ? Gauge::tabulated(rows) : gauge_from_density(rows, 1e6);
    if (g.domain_max() < domain_max * (1.0 - 1e-12)) {
      throw ValidationError(kind + " gauge covers [0, " + std::to_string(g.domain_max()) +
                            "] but [0, " + std::to_string(domain_max) + "] is needed");
    }
    return g;
  }
  throw ValidationError("unknown gauge kind '" + kind + "'");
}

}  // namespace masspack::io
