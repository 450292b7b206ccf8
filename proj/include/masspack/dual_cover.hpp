#pragma once

#include <span>
#include <vector>

#include "masspack/dyadic.hpp"
#include "masspack/gauge.hpp"
#include "masspack/packer.hpp"

namespace masspack {

// An interior-disjoint family of dyadic cubes together with its dual value
//   sum_k h(V(c_k)) + integral of R over the uncovered cells.
struct SemiCover {
  std::vector<DyadicCube> cubes;
  double value = 0.0;  // may be +inf
};

// Throws DomainError for cubes deeper than the roof grid or of the wrong
// dimension, ValidationError if two cubes overlap.
double semicover_value(const RoofGrid& roof, std::span<const DyadicCube> cover,
                       const Gauge& h);

// Exact minimum of semicover_value over all dyadic antichains:
//   leaf score  = min(h(V_leaf), integral of R over the leaf)
//   node score  = min(h(V(d)), sum of child scores)
// Ties go to the cube (coarser cover). Cubes are returned sorted.
SemiCover dyadic_min_cut(const RoofGrid& roof, const Gauge& h);

}  // namespace masspack
