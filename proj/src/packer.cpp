#include "masspack/packer.hpp"

#include <cmath>
#include <string>

#include "masspack/error.hpp"

namespace masspack {

RoofGrid::RoofGrid(CellField f) : field(std::move(f)) {
  for (double v : field.values) {
    if (!(v >= 0.0)) throw ValidationError("roof values must be >= 0 (or inf)");
  }
}

MassFunction::MassFunction(CellField f) : field(std::move(f)) {
  for (double v : field.values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError("mass function values must be finite and >= 0");
    }
  }
}

double MassFunction::integral() const {
  double s = 0.0;
  for (double v : field.values) s += v;
  return s * field.cell_volume();
}

namespace {

double leaf_cap(int n, int m, const Gauge& h) {
  const double vol = std::ldexp(1.0, -n * m);
  return h(vol) / vol;
}

// Scales each level-(k-1) block of the Morton-ordered array in place.
// Block sums run in a fixed order so the outcome never depends on scheduling.
std::vector<ScaledCube> sweep_morton(std::vector<double>& f, int n, int m, int k,
                                     const Gauge& h) {
  const int level = k - 1;
  const std::size_t block = std::size_t{1} << (n * (m - level));
  const std::size_t blocks = std::size_t{1} << (n * level);
  const double cell_vol = std::ldexp(1.0, -n * m);
  const double bound = h(std::ldexp(1.0, -n * level));

  std::vector<ScaledCube> scaled;
  for (std::size_t b = 0; b < blocks; ++b) {
    double* first = f.data() + b * block;
    double sum = 0.0;
    for (std::size_t i = 0; i < block; ++i) sum += first[i];
    const double mass = sum * cell_vol;
    if (mass <= bound * (1.0 + kSaturationSlack)) continue;
    const double c = bound / mass;
    for (std::size_t i = 0; i < block; ++i) first[i] *= c;
    scaled.push_back({cube_from_morton(b, level, n), c});
  }
  return scaled;
}

}  // namespace

MassFunction initial_cap(const RoofGrid& roof, const Gauge& h) {
  const auto& r = roof.field;
  const double cap = leaf_cap(r.n, r.m, h);
  CellField out(r.n, r.m);
  for (std::size_t i = 0; i < r.size(); ++i) {
    out.values[i] = std::min(r.values[i], cap);
  }
  return MassFunction(std::move(out));
}

SweepResult sweep_level(const MassFunction& f, int k, const Gauge& h) {
  const auto& field = f.field;
  if (k < 1 || k > field.m) {
    throw DomainError("sweep level " + std::to_string(k) + " outside [1, " +
                      std::to_string(field.m) + "]");
  }
  auto z = to_morton(field);
  auto scaled = sweep_morton(z, field.n, field.m, k, h);
  return {MassFunction(from_morton(field.n, field.m, z)), std::move(scaled)};
}

PackResult pack(const RoofGrid& roof, const Gauge& h) {
  const int n = roof.field.n;
  const int m = roof.field.m;
  if (m < 1) throw DomainError("packing needs a roof of depth m >= 1");

  auto z = to_morton(initial_cap(roof, h).field);

  PackResult res;
  std::vector<DyadicCube> candidates;
  for (int k = m; k >= 1; --k) {
    LevelTrace lt{k - 1, sweep_morton(z, n, m, k, h)};
    for (const auto& s : lt.scaled) candidates.push_back(s.cube);
    res.trace.push_back(std::move(lt));
  }
  res.bottlenecks = maximal_subset(candidates);

  res.f_raw = MassFunction(from_morton(n, m, z));
  const double norm = std::pow(3.0, -n);
  CellField normalized = res.f_raw.field;
  for (double& v : normalized.values) v *= norm;
  res.f = MassFunction(std::move(normalized));
  res.raw_value = res.f_raw.integral();
  res.primal_value = res.raw_value * norm;
  return res;
}

}  // namespace masspack
