#include "masspack/cli.hpp"

#include <filesystem>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "masspack/circle.hpp"
#include "masspack/dual_cover.hpp"
#include "masspack/error.hpp"
#include "masspack/io.hpp"
#include "masspack/packer.hpp"

namespace masspack {

namespace {

Gauge checked_gauge(const std::string& spec, double domain_max) {
  Gauge g = io::parse_gauge_spec(spec, domain_max);
  const auto rep = check_regularity(g, 20);
  if (!rep.r1) throw ValidationError("gauge '" + spec + "' fails R1 (h(x)/x must not increase)");
  if (!rep.r2) throw ValidationError("gauge '" + spec + "' fails R2 (h(x)/x must grow as x -> 0)");
  return g;
}

void emit(const RunConfig& cfg, const io::json& j, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    io::write_json(cfg.out_path, j);
  }
}

}  // namespace

RunConfig parse_config(std::span<const std::string> args) {
  RunConfig cfg;
  CLI::App app{"Gauge-constrained mass packing and its dyadic dual", "masspack"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", cfg.seed, "Seed for randomized checks");

  std::string scope = "all";
  std::string demo_name;

  auto* pack = app.add_subcommand("pack", "Pack mass under a roof and emit f, bottlenecks, values");
  pack->add_option("--roof", cfg.roof_path, "Roof cell field (JSON)")->required();
  pack->add_option("--gauge", cfg.gauge_spec, "power:<a> | log | density:<csv> | table:<csv>")
      ->required();
  pack->add_option("--out", cfg.out_path, "Output JSON (default stdout)");

  auto* dual = app.add_subcommand("dual", "Dyadic min-cut value and cover");
  dual->add_option("--roof", cfg.roof_path)->required();
  dual->add_option("--gauge", cfg.gauge_spec)->required();
  dual->add_option("--out", cfg.out_path);

  auto* verify = app.add_subcommand("verify", "Certify membership in the feasible class");
  verify->add_option("--roof", cfg.roof_path)->required();
  verify->add_option("--f", cfg.f_path, "Candidate (cell field or pack output)")->required();
  verify->add_option("--gauge", cfg.gauge_spec)->required();
  verify->add_option("--scope", scope)->check(CLI::IsMember({"dyadic", "all"}));
  verify->add_option("--tol", cfg.tolerance, "Relative slack on h(V(c))");
  verify->add_option("--samples", cfg.samples, "Random cubes when enumeration is capped");
  verify->add_option("--out", cfg.out_path);

  auto* split = app.add_subcommand("split", "Splitting diagnostics for a circle weight");
  split->add_option("--weight", cfg.weight_path, "One-column CSV of M samples")->required();
  split->add_option("--gauge", cfg.gauge_spec)->required();
  split->add_option("--t", cfg.t)->check(CLI::PositiveNumber);
  split->add_option("--eps", cfg.eps)->check(CLI::PositiveNumber);
  split->add_option("--Ns", cfg.Ns)->delimiter(',')->check(CLI::PositiveNumber);
  split->add_option("--out", cfg.out_path);

  auto* demo = app.add_subcommand("demo", "Bundled weight scenarios for the Carleson-type gauges");
  demo->add_option("name", demo_name, "carleson | alpha-carleson")
      ->required()
      ->check(CLI::IsMember({"carleson", "alpha-carleson"}));
  demo->add_option("--out-dir", cfg.out_dir);
  demo->add_option("--M", cfg.grid_size, "Circle grid size");
  demo->add_option("--t", cfg.t)->check(CLI::PositiveNumber);
  demo->add_option("--eps", cfg.eps)->check(CLI::PositiveNumber);
  demo->add_option("--Ns", cfg.Ns)->delimiter(',')->check(CLI::PositiveNumber);

  std::vector<const char*> argv{"masspack"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw UsageError("", app.help(), true);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what(), app.help());
  }

  if (*pack) cfg.command = Command::kPack;
  if (*dual) cfg.command = Command::kDual;
  if (*verify) cfg.command = Command::kVerify;
  if (*split) cfg.command = Command::kSplit;
  if (*demo) {
    cfg.command = Command::kDemo;
    cfg.demo_name = demo_name;
    if (!demo->count("--t")) cfg.t = 3.0;
  }
  cfg.scope = scope == "dyadic" ? Scope::kDyadic : Scope::kAllGridCubes;

  if (!(cfg.tolerance >= std::numeric_limits<double>::epsilon())) {
    throw UsageError("--tol must be at least machine epsilon", app.help());
  }
  if (!cfg.gauge_spec.empty()) {
    const double domain = cfg.command == Command::kSplit ? kTwoPi : 1.0;
    try {
      cfg.gauge = checked_gauge(cfg.gauge_spec, domain);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--gauge: ") + e.what(), app.help());
    }
  }
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::kPack: {
        auto j = io::to_json(pack(io::load_roof(cfg.roof_path), *cfg.gauge));
        j["gauge"] = cfg.gauge->describe();
        j["seed"] = cfg.seed;
        emit(cfg, j, out);
        return kExitOk;
      }
      case Command::kDual: {
        auto j = io::to_json(dyadic_min_cut(io::load_roof(cfg.roof_path), *cfg.gauge));
        j["gauge"] = cfg.gauge->describe();
        j["seed"] = cfg.seed;
        emit(cfg, j, out);
        return kExitOk;
      }
      case Command::kVerify: {
        MembershipOptions opts;
        opts.tolerance = cfg.tolerance;
        opts.samples = cfg.samples;
        opts.seed = cfg.seed;
        const auto rep = check_membership(io::load_mass_function(cfg.f_path),
                                          io::load_roof(cfg.roof_path), *cfg.gauge, cfg.scope,
                                          opts);
        auto j = io::to_json(rep);
        j["gauge"] = cfg.gauge->describe();
        j["seed"] = cfg.seed;
        emit(cfg, j, out);
        return rep.ok() ? kExitOk : kExitVerificationFailed;
      }
      case Command::kSplit: {
        const CircleWeight w(io::read_one_column_csv(cfg.weight_path), cfg.t);
        auto j = io::to_json(verify_splitting(w, *cfg.gauge, cfg.Ns, cfg.eps));
        j["gauge"] = cfg.gauge->describe();
        j["seed"] = cfg.seed;
        emit(cfg, j, out);
        return kExitOk;
      }
      case Command::kDemo: {
        DemoOptions opts;
        opts.grid_size = cfg.grid_size;
        opts.t = cfg.t;
        opts.eps = cfg.eps;
        opts.Ns = cfg.Ns;
        opts.seed = cfg.seed;
        const auto rep = run_demo(cfg.demo_name, opts);
        std::filesystem::create_directories(cfg.out_dir);
        const std::filesystem::path dir(cfg.out_dir);
        io::write_one_column_csv((dir / "weight_divergent.csv").string(),
                                 demo_weight(DemoWeight::kDivergentLog, opts.grid_size, opts.seed));
        io::write_one_column_csv((dir / "weight_control.csv").string(),
                                 demo_weight(DemoWeight::kControl, opts.grid_size, opts.seed));
        io::json summary = {{"demo", rep.name},
                            {"gauge", rep.gauge},
                            {"seed", cfg.seed},
                            {"divergent_monotone", rep.divergent_monotone},
                            {"divergent_drop", rep.divergent_drop},
                            {"disk_deviation_decreasing", rep.disk_deviation_decreasing},
                            {"control_drop", rep.control_drop},
                            {"divergent", io::to_json(rep.divergent)},
                            {"control", io::to_json(rep.control)}};
        const auto report_path = dir / ("demo_" + rep.name + ".json");
        io::write_json(report_path.string(), summary);
        out << "demo " << rep.name << " (" << rep.gauge << "): divergent-log weight drop "
            << rep.divergent_drop << "x, control drop " << rep.control_drop << "x\n"
            << "report: " << report_path.string() << '\n';
        return kExitOk;
      }
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ResolutionError& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

int main_entry(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const UsageError& e) {
    if (e.help_requested()) {
      std::cout << e.usage();
      return kExitOk;
    }
    std::cerr << "error: " << e.what() << "\n\n" << e.usage();
    return kExitUsage;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace masspack
