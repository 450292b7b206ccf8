#include "masspack/verifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "masspack/error.hpp"

namespace masspack {

double grid_cube_volume(const GridCube& c, int m) {
  const double edge = std::ldexp(static_cast<double>(c.side), -m);
  return std::pow(edge, static_cast<double>(c.corner.size()));
}

PrefixSumTable::PrefixSumTable(const CellField& field)
    : n_(field.n), m_(field.m), stride_(field.side() + 1) {
  std::size_t total = 1;
  for (int d = 0; d < n_; ++d) total *= stride_;
  table_.assign(total, 0.0L);

  const long double vol = field.cell_volume();
  for (std::size_t cell = 0; cell < field.size(); ++cell) {
    const auto idx = field.unflat(cell);
    std::size_t pos = 0;
    for (auto i : idx) pos = pos * stride_ + (i + 1);
    table_[pos] = static_cast<long double>(field.values[cell]) * vol;
  }
  std::size_t axis_stride = total;
  for (int d = 0; d < n_; ++d) {
    axis_stride /= stride_;
    for (std::size_t pos = 0; pos < total; ++pos) {
      if ((pos / axis_stride) % stride_ != 0) table_[pos] += table_[pos - axis_stride];
    }
  }
}

double PrefixSumTable::cube_integral(const GridCube& c) const {
  if (static_cast<int>(c.corner.size()) != n_) {
    throw DomainError("grid cube has wrong dimension");
  }
  const std::size_t limit = stride_ - 1;
  if (c.side < 1 || c.side > limit) throw DomainError("grid cube side out of range");
  for (auto x : c.corner) {
    if (x + static_cast<std::size_t>(c.side) > limit) {
      throw DomainError("grid cube leaves the unit cube");
    }
  }
  long double acc = 0.0L;
  for (std::uint32_t s = 0; s < (1u << n_); ++s) {
    std::size_t pos = 0;
    for (int d = 0; d < n_; ++d) {
      const bool upper = (s >> (n_ - 1 - d)) & 1u;
      pos = pos * stride_ + c.corner[static_cast<std::size_t>(d)] + (upper ? c.side : 0);
    }
    const bool negative = (n_ - std::popcount(s)) % 2 != 0;
    acc += negative ? -table_[pos] : table_[pos];
  }
  return static_cast<double>(acc);
}

double cube_integral(const PrefixSumTable& table, const GridCube& c) {
  return table.cube_integral(c);
}

namespace {

class MassChecker {
 public:
  MassChecker(const PrefixSumTable& table, const Gauge& h, int n, int m,
              const MembershipOptions& opts, ViolationReport& rep)
      : table_(table), n_(n), m_(m), opts_(opts), rep_(rep) {
    bounds_.resize((std::size_t{1} << m) + 1);
    for (std::size_t s = 1; s < bounds_.size(); ++s) {
      GridCube probe{std::vector<std::uint32_t>(static_cast<std::size_t>(n), 0),
                     static_cast<std::uint32_t>(s)};
      bounds_[s] = h(grid_cube_volume(probe, m));
    }
  }

  void check(const GridCube& c) {
    ++rep_.cubes_checked;
    const double mass = table_.cube_integral(c);
    const double bound = bounds_[c.side];
    if (mass > bound * (1.0 + opts_.tolerance)) {
      ++rep_.violation_count;
      if (rep_.violations.size() < opts_.max_listed) {
        rep_.violations.push_back({Violation::Kind::kMass, c, mass, bound, mass - bound});
      }
    }
  }

  // Every grid cube of the given side.
  void check_all_with_side(std::uint32_t side) {
    const std::uint32_t span = (1u << m_) - side + 1;
    GridCube c{std::vector<std::uint32_t>(static_cast<std::size_t>(n_), 0), side};
    while (true) {
      check(c);
      int d = n_ - 1;
      while (d >= 0 && ++c.corner[static_cast<std::size_t>(d)] == span) {
        c.corner[static_cast<std::size_t>(d)] = 0;
        --d;
      }
      if (d < 0) break;
    }
  }

  void check_dyadic() {
    for (int k = 0; k <= m_; ++k) {
      const std::uint32_t side = 1u << (m_ - k);
      const std::uint32_t count = 1u << k;
      GridCube c{std::vector<std::uint32_t>(static_cast<std::size_t>(n_), 0), side};
      std::vector<std::uint32_t> idx(static_cast<std::size_t>(n_), 0);
      while (true) {
        for (std::size_t d = 0; d < idx.size(); ++d) c.corner[d] = idx[d] * side;
        check(c);
        int d = n_ - 1;
        while (d >= 0 && ++idx[static_cast<std::size_t>(d)] == count) {
          idx[static_cast<std::size_t>(d)] = 0;
          --d;
        }
        if (d < 0) break;
      }
    }
  }

 private:
  const PrefixSumTable& table_;
  int n_;
  int m_;
  const MembershipOptions& opts_;
  ViolationReport& rep_;
  std::vector<double> bounds_;
};

}  // namespace

ViolationReport check_membership(const MassFunction& f, const RoofGrid& roof,
                                 const Gauge& h, Scope scope,
                                 const MembershipOptions& opts) {
  const auto& ff = f.field;
  const auto& rf = roof.field;
  if (ff.n != rf.n || ff.m != rf.m) {
    throw ValidationError("mass function and roof have different grid shapes");
  }
  if (!(opts.tolerance >= std::numeric_limits<double>::epsilon())) {
    throw ValidationError("membership tolerance below machine epsilon");
  }

  ViolationReport rep;
  rep.scope = scope;
  for (std::size_t i = 0; i < ff.size(); ++i) {
    if (ff.values[i] > rf.values[i]) {
      ++rep.violation_count;
      if (rep.violations.size() < opts.max_listed) {
        rep.violations.push_back({Violation::Kind::kPointwise,
                                  GridCube{ff.unflat(i), 1}, ff.values[i],
                                  rf.values[i], ff.values[i] - rf.values[i]});
      }
    }
  }

  const PrefixSumTable table(ff);
  MassChecker checker(table, h, ff.n, ff.m, opts, rep);
  if (scope == Scope::kDyadic) {
    checker.check_dyadic();
  } else if (ff.n * ff.m <= opts.exhaustive_limit) {
    for (std::uint32_t side = 1; side <= (1u << ff.m); ++side) {
      checker.check_all_with_side(side);
    }
  } else {
    rep.exhaustive = false;
    checker.check_dyadic();
    std::mt19937_64 rng(opts.seed);
    const std::uint32_t full = 1u << ff.m;
    for (std::size_t s = 0; s < opts.samples; ++s) {
      const auto side = static_cast<std::uint32_t>(rng() % full) + 1;
      GridCube c{std::vector<std::uint32_t>(static_cast<std::size_t>(ff.n)), side};
      for (auto& x : c.corner) x = static_cast<std::uint32_t>(rng() % (full - side + 1));
      checker.check(c);
    }
  }

  std::sort(rep.violations.begin(), rep.violations.end(),
            [](const Violation& a, const Violation& b) {
              if (a.kind != b.kind) return a.kind < b.kind;
              return a.cube < b.cube;
            });
  return rep;
}

double duality_ratio(const PackResult& primal, double dual_value) {
  if (!(dual_value >= 0.0) || !(primal.primal_value >= 0.0)) {
    throw ValidationError("duality ratio needs nonnegative primal and dual values");
  }
  if (primal.primal_value == 0.0) {
    return dual_value == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return dual_value / primal.primal_value;
}

DyadicCovering covering_dyadic_cubes(const GridCube& c, int m) {
  const auto limit = std::uint32_t{1} << m;
  if (c.side < 1 || c.side > limit) throw DomainError("grid cube side out of range");
  const int lg = std::bit_width(c.side) - 1;
  DyadicCovering out;
  out.level = m - lg;
  const std::uint32_t width = std::uint32_t{1} << lg;
  const std::size_t n = c.corner.size();
  std::vector<std::uint32_t> lo(n);
  std::vector<std::uint32_t> hi(n);
  for (std::size_t d = 0; d < n; ++d) {
    if (c.corner[d] + static_cast<std::size_t>(c.side) > limit) {
      throw DomainError("grid cube leaves the unit cube");
    }
    lo[d] = c.corner[d] / width;
    hi[d] = (c.corner[d] + c.side - 1) / width;
  }
  std::vector<std::uint32_t> idx = lo;
  while (true) {
    out.cubes.push_back(DyadicCube{out.level, idx});
    int d = static_cast<int>(n) - 1;
    while (d >= 0 && idx[static_cast<std::size_t>(d)] == hi[static_cast<std::size_t>(d)]) {
      idx[static_cast<std::size_t>(d)] = lo[static_cast<std::size_t>(d)];
      --d;
    }
    if (d < 0) break;
    ++idx[static_cast<std::size_t>(d)];
  }
  return out;
}

}  // namespace masspack
