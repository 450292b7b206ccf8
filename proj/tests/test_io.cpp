#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "masspack/dual_cover.hpp"
#include "masspack/error.hpp"
#include "masspack/io.hpp"
#include "masspack/packer.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using masspack::CellField;
using masspack::RoofGrid;
namespace io = masspack::io;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("masspack_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& body) const {
    const auto p = path / name;
    std::ofstream(p) << body;
    return p.string();
  }
};

}  // namespace

TEST_CASE("infinity is spelled inf") {
  CHECK(io::number_to_json(oracle::kInf) == "inf");
  CHECK(std::isinf(io::number_from_json("inf")));
  CHECK(io::number_from_json(2.5) == 2.5);
  CHECK_THROWS_AS(io::number_from_json("nan"), masspack::ValidationError);
  CHECK_THROWS_AS(io::number_to_json(std::nan("")), masspack::ValidationError);
}

TEST_CASE("cell fields, pack results and covers round trip bitwise") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 2);
    const auto roof = oracle::random_roof(rng, n, 1 + static_cast<int>(rng() % 4));
    const auto h = oracle::random_gauge(rng);
    const auto text = io::to_json(roof).dump();
    CHECK(io::cell_field_from_json(io::json::parse(text)) == roof);

    const auto res = masspack::pack(RoofGrid(roof), h);
    const auto back = io::pack_result_from_json(io::json::parse(io::to_json(res).dump()));
    CHECK(back.f.field == res.f.field);
    CHECK(back.f_raw.field == res.f_raw.field);
    CHECK(back.bottlenecks == res.bottlenecks);
    CHECK(back.primal_value == res.primal_value);
    CHECK(back.raw_value == res.raw_value);
    REQUIRE(back.trace.size() == res.trace.size());
    for (std::size_t i = 0; i < back.trace.size(); ++i) {
      REQUIRE(back.trace[i].scaled.size() == res.trace[i].scaled.size());
      for (std::size_t k = 0; k < back.trace[i].scaled.size(); ++k) {
        CHECK(back.trace[i].scaled[k].c == res.trace[i].scaled[k].c);
        CHECK(back.trace[i].scaled[k].cube == res.trace[i].scaled[k].cube);
      }
    }

    const auto cut = masspack::dyadic_min_cut(RoofGrid(roof), h);
    const auto cut_back = io::semicover_from_json(io::json::parse(io::to_json(cut).dump()));
    CHECK(cut_back.value == cut.value);
    CHECK(cut_back.cubes == cut.cubes);
  }
}

TEST_CASE("roof and mass files") {
  TempDir dir;
  const auto roof = io::load_roof(dir.file("r.json", R"({"n":1,"m":2,"values":["inf",1,0,2.5]})"));
  CHECK(std::isinf(roof.field.values[0]));
  CHECK(roof.field.values[3] == 2.5);

  CHECK_THROWS_AS(io::load_roof(dir.file("bad.json", R"({"n":1,"m":2,"values":[1,2]})")),
                  masspack::ValidationError);
  CHECK_THROWS_AS(io::load_roof(dir.file("neg.json", R"({"n":1,"m":1,"values":[-1,2]})")),
                  masspack::ValidationError);
  CHECK_THROWS_AS(io::load_roof(dir.file("junk.json", "{not json")), masspack::ValidationError);
  CHECK_THROWS_AS(io::load_roof((dir.path / "missing.json").string()), masspack::ValidationError);

  const auto res = masspack::pack(roof, masspack::Gauge::power(0.5));
  const auto packed = dir.file("p.json", io::to_json(res).dump());
  CHECK(io::load_mass_function(packed).field == res.f.field);
  CHECK(io::load_mass_function(dir.file("f.json", R"({"n":1,"m":1,"values":[0.5,0.25]})"))
            .field.values == std::vector<double>{0.5, 0.25});
  CHECK_THROWS_AS(io::load_mass_function(dir.file("inf.json", R"({"n":1,"m":1,"values":["inf",0]})")),
                  masspack::ValidationError);
}

TEST_CASE("csv formats") {
  TempDir dir;
  std::ostringstream os;
  io::write_cell_field_csv(os, CellField(2, 1, {1, 2, oracle::kInf, 0.125}));
  CHECK(os.str() == "i0,i1,value\n0,0,1\n0,1,2\n1,0,inf\n1,1,0.125\n");

  const auto two = io::read_two_column_csv(dir.file("t.csv", "x,h\n0.5,1\n# note\n1,1.5\n"));
  CHECK(two == std::vector<std::pair<double, double>>{{0.5, 1.0}, {1.0, 1.5}});
  CHECK_THROWS_AS(io::read_two_column_csv(dir.file("d.csv", "0.5,1\n0.5,2\n")),
                  masspack::ValidationError);
  CHECK_THROWS_AS(io::read_two_column_csv(dir.file("c.csv", "0.5,1,3\n")),
                  masspack::ValidationError);
  CHECK_THROWS_AS(io::read_one_column_csv(dir.file("n.csv", "1\nabc\n")),
                  masspack::ValidationError);

  const std::vector<double> w{0.1, 1.0 / 3.0, 0.0, 12345.678};
  const auto path = (dir.path / "w.csv").string();
  io::write_one_column_csv(path, w);
  CHECK(io::read_one_column_csv(path) == w);
}

TEST_CASE("gauge specs") {
  TempDir dir;
  CHECK(io::parse_gauge_spec("power:0.5", 1.0)(0.25) == doctest::Approx(0.5));
  CHECK(io::parse_gauge_spec("power:0.5:2", 1.0)(0.25) == doctest::Approx(1.0));
  CHECK(io::parse_gauge_spec("log", 1.0)(1.0) == doctest::Approx(1.0));
  CHECK(io::parse_gauge_spec("log", 2 * M_PI).domain_max() == doctest::Approx(2 * M_PI));
  CHECK_THROWS_AS(io::parse_gauge_spec("power:1.5", 1.0), masspack::ValidationError);
  CHECK_THROWS_AS(io::parse_gauge_spec("power:abc", 1.0), masspack::ValidationError);
  CHECK_THROWS_AS(io::parse_gauge_spec("cubic", 1.0), masspack::ValidationError);
  CHECK_THROWS_AS(io::parse_gauge_spec("log:2", 1.0), masspack::ValidationError);

  const auto table = dir.file("h.csv", "0.25,0.5\n0.5,0.70710678\n1,1\n");
  CHECK(io::parse_gauge_spec("table:" + table, 1.0)(0.375) == doctest::Approx(0.60355339));
  CHECK_THROWS_AS(io::parse_gauge_spec("table:" + table, 2.0), masspack::ValidationError);

  std::ostringstream body;
  body.precision(17);
  for (int j = 16; j >= 0; --j) {
    const double x = std::ldexp(1.0, -j);
    body << x << ',' << std::exp(-1.0 / std::sqrt(x)) << '\n';
  }
  const auto g = io::parse_gauge_spec("density:" + dir.file("g.csv", body.str()), 1.0);
  CHECK(g(1.0) == doctest::Approx(1.0).epsilon(1e-6));
}
