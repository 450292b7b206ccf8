#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "masspack/cli.hpp"
#include "masspack/io.hpp"

namespace fs = std::filesystem;
using masspack::Command;

namespace {

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("masspack_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& body) const {
    std::ofstream(dir / name) << body;
    return (dir / name).string();
  }
  std::string read(const std::string& name) const {
    std::ifstream in(dir / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  // Runs the installed binary; stdout goes to out.txt, stderr to err.txt.
  int run(const std::string& args) const {
    const std::string cmd = std::string(MASSPACK_BIN) + " " + args + " > " +
                            (dir / "out.txt").string() + " 2> " + (dir / "err.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
};

masspack::RunConfig parse(std::vector<std::string> args) { return masspack::parse_config(args); }

}  // namespace

TEST_CASE("argument parsing") {
  const auto cfg = parse({"pack", "--roof", "r.json", "--gauge", "power:0.5"});
  CHECK(cfg.command == Command::kPack);
  CHECK(cfg.roof_path == "r.json");
  REQUIRE(cfg.gauge.has_value());
  CHECK(cfg.gauge->describe() == "power:0.5");

  const auto split = parse({"split", "--weight", "w.csv", "--gauge", "log", "--Ns", "4,8,16",
                            "--t", "2"});
  CHECK(split.Ns == std::vector<int>{4, 8, 16});
  CHECK(split.t == 2.0);
  CHECK(split.gauge->domain_max() == doctest::Approx(masspack::kTwoPi));

  const auto verify = parse({"verify", "--roof", "r", "--f", "f", "--gauge", "log", "--scope",
                             "dyadic", "--seed", "12"});
  CHECK(verify.scope == masspack::Scope::kDyadic);
  CHECK(verify.seed == 12);

  CHECK(parse({"demo", "carleson"}).t == 3.0);

  CHECK_THROWS_AS(parse({}), masspack::UsageError);
  CHECK_THROWS_AS(parse({"pack", "--roof", "r.json", "--gauge", "power:1.5"}),
                  masspack::UsageError);
  CHECK_THROWS_AS(parse({"pack", "--roof", "r.json", "--gauge", "power:0.5", "--bogus"}),
                  masspack::UsageError);
  CHECK_THROWS_AS(parse({"demo", "unknown"}), masspack::UsageError);
  CHECK_THROWS_AS(parse({"verify", "--roof", "r", "--f", "f", "--gauge", "log", "--tol", "0"}),
                  masspack::UsageError);
  CHECK_THROWS_AS(parse({"verify", "--roof", "r", "--f", "f", "--gauge", "log", "--scope", "x"}),
                  masspack::UsageError);
}

TEST_CASE("exit codes of the binary") {
  Workspace ws;
  const auto roof = ws.write("roof.json", R"({"n":1,"m":2,"values":[4,4,4,4]})");
  CHECK(ws.run("") == 2);
  CHECK(ws.run("demo nonexistent") == 2);
  CHECK(ws.run("pack --roof " + roof + " --gauge power:1.5") == 2);
  CHECK(ws.run("pack --roof " + (ws.dir / "missing.json").string() + " --gauge log") == 2);
  CHECK(ws.run("--help") == 0);

  REQUIRE(ws.run("pack --roof " + roof + " --gauge power:0.5 --out " +
                 (ws.dir / "p.json").string()) == 0);
  const auto packed = masspack::io::load_json((ws.dir / "p.json").string());
  CHECK(packed.at("raw_value").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(packed.at("bottlenecks") == masspack::io::json::parse("[[0,[0]]]"));
  CHECK(packed.contains("seed"));

  CHECK(ws.run("verify --roof " + roof + " --f " + (ws.dir / "p.json").string() +
               " --gauge power:0.5") == 0);
  const auto too_much = ws.write("big.json", R"({"n":1,"m":2,"values":[3,3,3,3]})");
  CHECK(ws.run("verify --roof " + roof + " --f " + too_much + " --gauge power:0.5") == 1);
  const auto report = masspack::io::json::parse(ws.read("out.txt"));
  CHECK_FALSE(report.at("ok").get<bool>());
  CHECK(report.at("violation_count").get<int>() > 0);

  REQUIRE(ws.run("dual --roof " + roof + " --gauge power:0.5") == 0);
  const auto dual = masspack::io::json::parse(ws.read("out.txt"));
  CHECK(dual.at("value").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("split and demo commands") {
  Workspace ws;
  std::string weight;
  for (int j = 0; j < 256; ++j) weight += (j % 4 == 0 ? "0.5\n" : "0\n");
  const auto w = ws.write("w.csv", weight);
  REQUIRE(ws.run("split --weight " + w + " --gauge log --Ns 2,4 --out " +
                 (ws.dir / "s.json").string()) == 0);
  const auto rep = masspack::io::load_json((ws.dir / "s.json").string());
  CHECK(rep.at("entries").size() == 2);
  CHECK(rep.at("grid_size").get<int>() == 256);
  CHECK(ws.run("split --weight " + w + " --gauge log --Ns 3") == 2);

  REQUIRE(ws.run("demo alpha-carleson --M 1024 --Ns 4,8 --out-dir " + (ws.dir / "d").string()) ==
          0);
  CHECK(fs::exists(ws.dir / "d" / "demo_alpha-carleson.json"));
  CHECK(fs::exists(ws.dir / "d" / "weight_divergent.csv"));
  CHECK(fs::exists(ws.dir / "d" / "weight_control.csv"));
  const auto demo = masspack::io::load_json((ws.dir / "d" / "demo_alpha-carleson.json").string());
  CHECK(demo.at("gauge") == "power:0.5");
}
