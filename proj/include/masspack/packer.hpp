#pragma once

#include <vector>

#include "masspack/dyadic.hpp"
#include "masspack/gauge.hpp"

namespace masspack {

// Nonnegative roof on the level-m cells; +inf is allowed.
struct RoofGrid {
  CellField field;

  RoofGrid() = default;
  // Throws ValidationError on negative or NaN values.
  explicit RoofGrid(CellField f);
};

// Finite nonnegative candidate mass density on the level-m cells.
struct MassFunction {
  CellField field;

  MassFunction() = default;
  // Throws ValidationError on negative or non-finite values.
  explicit MassFunction(CellField f);

  double integral() const;
};

struct ScaledCube {
  DyadicCube cube;
  double c = 1.0;  // scaling constant, in (0, 1)
};

struct LevelTrace {
  int level = 0;  // level of the scaled cubes
  std::vector<ScaledCube> scaled;
};

struct PackResult {
  MassFunction f;      // 3^-n * f_raw, a member of the feasible class
  MassFunction f_raw;  // after the last (root) sweep
  std::vector<DyadicCube> bottlenecks;  // maximal scaled cubes
  double primal_value = 0.0;            // integral of f
  double raw_value = 0.0;               // integral of f_raw
  std::vector<LevelTrace> trace;        // one entry per sweep, deepest first
};

// min(R, 2^{nm} h(2^{-nm})) per cell.
MassFunction initial_cap(const RoofGrid& roof, const Gauge& h);

struct SweepResult {
  MassFunction f;
  std::vector<ScaledCube> scaled;
};

// One bottom-up step: every cube d of level k-1 whose current mass exceeds
// h(V(d)) is scaled down to exactly h(V(d)). Requires 1 <= k <= f.field.m.
SweepResult sweep_level(const MassFunction& f, int k, const Gauge& h);

// Full construction: cap, sweeps k = m..1, bottleneck extraction and the
// final 3^-n normalization. Throws DomainError for m = 0.
PackResult pack(const RoofGrid& roof, const Gauge& h);

// Relative slack applied to the c_d = 1 branch.
inline constexpr double kSaturationSlack = 1e-12;

}  // namespace masspack
