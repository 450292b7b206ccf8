#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace masspack {

// Closed dyadic cube of [0,1]^n: prod_i [index_i 2^-level, (index_i+1) 2^-level].
struct DyadicCube {
  int level = 0;
  std::vector<std::uint32_t> index;

  static DyadicCube root(int n);

  int dim() const { return static_cast<int>(index.size()); }
  double volume() const;
  // Throws DomainError at level 0.
  DyadicCube parent() const;
  // True if this cube contains `other` (or equals it).
  bool contains(const DyadicCube& other) const;

  // Level first, then lexicographic index.
  friend auto operator<=>(const DyadicCube&, const DyadicCube&) = default;
};

// 2^n cubes at level c.level + 1 tiling c, in Morton child order.
std::vector<DyadicCube> children(const DyadicCube& c);

// True iff a and b share no interior point, decided by index arithmetic.
bool interiors_disjoint(const DyadicCube& a, const DyadicCube& b);

// One value per level-m cell of [0,1]^n, row-major over the index vector
// (first coordinate most significant).
struct CellField {
  int n = 1;
  int m = 0;
  std::vector<double> values;

  CellField() = default;
  // Throws DomainError unless n >= 1, m >= 0, n*m <= kMaxLog2Cells.
  CellField(int n, int m, double fill = 0.0);
  CellField(int n, int m, std::vector<double> values);

  static constexpr int kMaxLog2Cells = 24;

  std::size_t size() const { return values.size(); }
  std::size_t side() const { return std::size_t{1} << m; }
  double cell_volume() const;
  std::size_t flat(std::span<const std::uint32_t> idx) const;
  std::vector<std::uint32_t> unflat(std::size_t flat_index) const;

  friend bool operator==(const CellField&, const CellField&) = default;
};

// Row-major indices of the level-m cells whose union is c, ascending.
// Throws DomainError if c.level > m.
std::vector<std::size_t> cells_under(const DyadicCube& c, int m);

// The input cubes not strictly contained in another input cube, without
// duplicates, sorted by level then index.
std::vector<DyadicCube> maximal_subset(std::span<const DyadicCube> cubes);

// Z-order helpers. A level-k cube with Morton code z owns the level-m cells
// with Morton codes [z << n(m-k), (z+1) << n(m-k)).
std::uint64_t morton_encode(std::span<const std::uint32_t> idx, int level);
std::vector<std::uint32_t> morton_decode(std::uint64_t code, int level, int n);
DyadicCube cube_from_morton(std::uint64_t code, int level, int n);

// perm[z] = row-major flat index of the level-m cell with Morton code z.
std::vector<std::size_t> morton_permutation(int n, int m);
std::vector<double> to_morton(const CellField& field);
CellField from_morton(int n, int m, std::span<const double> morton_values);

}  // namespace masspack
