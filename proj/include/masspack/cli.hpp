#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "masspack/demo.hpp"
#include "masspack/gauge.hpp"
#include "masspack/verifier.hpp"

namespace masspack {

enum class Command { kPack, kDual, kVerify, kSplit, kDemo };

// Exit codes of the masspack tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::kPack;
  std::string gauge_spec;
  std::optional<Gauge> gauge;  // parsed and regularity-checked
  std::string roof_path;
  std::string f_path;
  std::string weight_path;
  std::string out_path;  // empty: stdout
  std::string out_dir = ".";
  Scope scope = Scope::kAllGridCubes;
  double t = 1.0;
  double eps = 1.0;
  std::vector<int> Ns{4, 8, 16, 32, 64};
  std::string demo_name;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = 1e-9;
  std::size_t samples = 200000;
  std::size_t grid_size = std::size_t{1} << 14;
};

class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& what, std::string usage, bool help = false)
      : std::runtime_error(what), usage_(std::move(usage)), help_(help) {}
  const std::string& usage() const { return usage_; }
  // --help was given; not an error.
  bool help_requested() const { return help_; }

 private:
  std::string usage_;
  bool help_;
};

// Arguments exclude the program name. Throws UsageError on unknown or
// malformed flags, on an empty argument list, and on gauges that fail R1/R2.
RunConfig parse_config(std::span<const std::string> args);

// Executes a parsed configuration; returns the process exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_config + run with the exit-code contract applied.
int main_entry(int argc, const char* const* argv);

}  // namespace masspack
