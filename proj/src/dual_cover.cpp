#include "masspack/dual_cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "masspack/error.hpp"

namespace masspack {

double semicover_value(const RoofGrid& roof, std::span<const DyadicCube> cover,
                       const Gauge& h) {
  const auto& r = roof.field;
  std::vector<DyadicCube> sorted(cover.begin(), cover.end());
  for (const auto& c : sorted) {
    if (c.dim() != r.n) throw DomainError("cover cube has wrong dimension");
    if (c.level > r.m) {
      throw DomainError("cover cube at level " + std::to_string(c.level) +
                        " is finer than the roof grid");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw ValidationError("cover contains a repeated cube");
    }
    DyadicCube a = sorted[i];
    while (a.level > 0) {
      a = a.parent();
      if (std::binary_search(sorted.begin(), sorted.end(), a)) {
        throw ValidationError("cover cubes overlap: not an antichain");
      }
    }
  }

  std::vector<char> covered(r.size(), 0);
  double gauge_sum = 0.0;
  for (const auto& c : sorted) {
    gauge_sum += h(c.volume());
    for (auto cell : cells_under(c, r.m)) covered[cell] = 1;
  }
  double residual = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!covered[i]) residual += r.values[i];
  }
  if (std::isinf(residual)) return std::numeric_limits<double>::infinity();
  return gauge_sum + residual * r.cell_volume();
}

SemiCover dyadic_min_cut(const RoofGrid& roof, const Gauge& h) {
  const auto& r = roof.field;
  const int n = r.n;
  const int m = r.m;
  const std::size_t fan = std::size_t{1} << n;

  // score[k][z], take[k][z] for the level-k cube with Morton code z.
  std::vector<std::vector<double>> score(static_cast<std::size_t>(m) + 1);
  std::vector<std::vector<char>> take(static_cast<std::size_t>(m) + 1);

  const auto leaves = to_morton(r);
  const double cell_vol = r.cell_volume();
  const double h_leaf = h(cell_vol);
  auto& leaf_score = score[static_cast<std::size_t>(m)];
  auto& leaf_take = take[static_cast<std::size_t>(m)];
  leaf_score.resize(leaves.size());
  leaf_take.resize(leaves.size());
  for (std::size_t z = 0; z < leaves.size(); ++z) {
    const double mass = leaves[z] * cell_vol;  // inf stays inf
    leaf_take[z] = h_leaf <= mass;
    leaf_score[z] = leaf_take[z] ? h_leaf : mass;
  }

  for (int k = m - 1; k >= 0; --k) {
    const auto uk = static_cast<std::size_t>(k);
    const auto& below = score[uk + 1];
    const std::size_t count = std::size_t{1} << (n * k);
    const double hk = h(std::ldexp(1.0, -n * k));
    score[uk].resize(count);
    take[uk].resize(count);
    for (std::size_t z = 0; z < count; ++z) {
      double sum = 0.0;
      for (std::size_t t = 0; t < fan; ++t) sum += below[z * fan + t];
      take[uk][z] = hk <= sum;
      score[uk][z] = take[uk][z] ? hk : sum;
    }
  }

  SemiCover out;
  out.value = score[0][0];
  std::vector<std::pair<int, std::uint64_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [k, z] = stack.back();
    stack.pop_back();
    if (take[static_cast<std::size_t>(k)][z]) {
      out.cubes.push_back(cube_from_morton(z, k, n));
    } else if (k < m) {
      for (std::size_t t = 0; t < fan; ++t) stack.emplace_back(k + 1, z * fan + t);
    }
  }
  std::sort(out.cubes.begin(), out.cubes.end());
  return out;
}

}  // namespace masspack
