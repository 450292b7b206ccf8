#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "masspack/circle.hpp"
#include "masspack/gauge.hpp"

namespace masspack {

inline constexpr std::uint64_t kDefaultSeed = 0x6d61737370616b31ULL;

enum class DemoWeight {
  // Vanishes on a scattered three-quarter-density subset of every arc, so
  // log w has divergent integral over every Carleson-type set of positive
  // measure.
  kDivergentLog,
  // Same as kDivergentLog on the lower half circle but positive on the
  // upper half arc, where log w is integrable.
  kControl,
};

std::vector<double> demo_weight(DemoWeight kind, std::size_t grid_size, std::uint64_t seed);

struct DemoOptions {
  std::size_t grid_size = std::size_t{1} << 14;
  double t = 3.0;
  double eps = 1.0;
  double alpha = 0.5;  // alpha-carleson: h(x) = eps * x^alpha
  std::vector<int> Ns{4, 8, 16, 32, 64};
  std::uint64_t seed = kDefaultSeed;
  bool arc_ratio = false;
};

// "carleson": h(x) = x ln(e 2pi / x) on [0, 2pi] (x ln(e/x) extended to the
// circle). "alpha-carleson": h(x) = eps * x^alpha. Throws DomainError for
// any other name.
Gauge demo_gauge(const std::string& name, const DemoOptions& opts = {});

struct DemoReport {
  std::string name;
  std::string gauge;
  SplittingReport divergent;
  SplittingReport control;
  // Trend verdicts on the divergent weight / control weight.
  bool divergent_monotone = false;
  double divergent_drop = 0.0;  // first / last weighted integral
  bool disk_deviation_decreasing = false;
  double control_drop = 0.0;
};

DemoReport run_demo(const std::string& name, const DemoOptions& opts = {});

}  // namespace masspack
