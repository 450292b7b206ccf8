#pragma once

#include <cstdint>
#include <vector>

#include "masspack/dyadic.hpp"
#include "masspack/gauge.hpp"
#include "masspack/packer.hpp"

namespace masspack {

// Axis-aligned cube on the level-m cell lattice: `side` cells per edge,
// lower corner at cell coordinates `corner`.
struct GridCube {
  std::vector<std::uint32_t> corner;
  std::uint32_t side = 1;

  friend auto operator<=>(const GridCube&, const GridCube&) = default;
};

double grid_cube_volume(const GridCube& c, int m);

// n-dimensional summed-area table of the cell integrals of a field. Entries
// are accumulated in extended precision so that small cubes deep inside a
// large field still reconstruct to ~1e-15 relative.
class PrefixSumTable {
 public:
  explicit PrefixSumTable(const CellField& field);

  int n() const { return n_; }
  int m() const { return m_; }
  // Integral over c; throws DomainError if c leaves the grid.
  double cube_integral(const GridCube& c) const;

 private:
  int n_;
  int m_;
  std::size_t stride_;  // 2^m + 1
  std::vector<long double> table_;
};

double cube_integral(const PrefixSumTable& table, const GridCube& c);

enum class Scope { kDyadic, kAllGridCubes };

struct Violation {
  enum class Kind { kPointwise, kMass };
  Kind kind = Kind::kMass;
  GridCube cube;          // single cell for pointwise violations
  double amount = 0.0;    // f value or cube integral
  double bound = 0.0;     // R value or h(V(c))
  double excess = 0.0;    // amount - bound
};

struct MembershipOptions {
  double tolerance = 1e-9;     // relative slack on h(V(c))
  int exhaustive_limit = 12;   // enumerate all grid cubes while n*m <= limit
  std::size_t samples = 200000;  // random grid cubes checked above the limit
  std::uint64_t seed = 0x6d61737370616b31ULL;
  std::size_t max_listed = 1000;  // violations kept in the report
};

struct ViolationReport {
  Scope scope = Scope::kDyadic;
  bool exhaustive = true;
  std::size_t cubes_checked = 0;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  // sorted, truncated at max_listed
  bool ok() const { return violation_count == 0; }
};

// Checks f <= R cellwise and int_c f <= h(V(c)) * (1 + tol) on every cube in
// scope. Throws ValidationError if the shapes of f and R differ.
ViolationReport check_membership(const MassFunction& f, const RoofGrid& roof,
                                 const Gauge& h, Scope scope,
                                 const MembershipOptions& opts = {});

// dual / primal; 1 for 0/0, +inf for x/0. Throws ValidationError on
// negative inputs.
double duality_ratio(const PackResult& primal, double dual_value);

// The level r with 2^-r <= side * 2^-m < 2^-r+1 and the level-r dyadic cubes
// meeting the interior of c; there are at most 3^n of them.
struct DyadicCovering {
  int level = 0;
  std::vector<DyadicCube> cubes;
};
DyadicCovering covering_dyadic_cubes(const GridCube& c, int m);

}  // namespace masspack
