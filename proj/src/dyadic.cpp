#include "masspack/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "masspack/error.hpp"

namespace masspack {

DyadicCube DyadicCube::root(int n) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  return DyadicCube{0, std::vector<std::uint32_t>(static_cast<std::size_t>(n), 0)};
}

double DyadicCube::volume() const { return std::ldexp(1.0, -dim() * level); }

DyadicCube DyadicCube::parent() const {
  if (level < 1) throw DomainError("the root cube has no parent");
  DyadicCube p{level - 1, index};
  for (auto& i : p.index) i >>= 1;
  return p;
}

bool DyadicCube::contains(const DyadicCube& other) const {
  if (other.dim() != dim() || other.level < level) return false;
  const int shift = other.level - level;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if ((other.index[i] >> shift) != index[i]) return false;
  }
  return true;
}

std::vector<DyadicCube> children(const DyadicCube& c) {
  const int n = c.dim();
  std::vector<DyadicCube> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t t = 0; t < (1u << n); ++t) {
    DyadicCube child{c.level + 1, c.index};
    for (int i = 0; i < n; ++i) {
      child.index[static_cast<std::size_t>(i)] =
          2 * c.index[static_cast<std::size_t>(i)] + ((t >> (n - 1 - i)) & 1u);
    }
    out.push_back(std::move(child));
  }
  return out;
}

bool interiors_disjoint(const DyadicCube& a, const DyadicCube& b) {
  // Dyadic cubes are nested or interior-disjoint.
  return !a.contains(b) && !b.contains(a);
}

namespace {

void check_shape(int n, int m) {
  if (n < 1 || m < 0 || static_cast<long>(n) * m > CellField::kMaxLog2Cells) {
    throw DomainError("unsupported grid shape n=" + std::to_string(n) +
                      ", m=" + std::to_string(m));
  }
}

}  // namespace

CellField::CellField(int n_, int m_, double fill) : n(n_), m(m_) {
  check_shape(n, m);
  values.assign(std::size_t{1} << (n * m), fill);
}

CellField::CellField(int n_, int m_, std::vector<double> v)
    : n(n_), m(m_), values(std::move(v)) {
  check_shape(n, m);
  if (values.size() != (std::size_t{1} << (n * m))) {
    throw ValidationError("cell field of shape n=" + std::to_string(n) +
                          ", m=" + std::to_string(m) + " needs " +
                          std::to_string(std::size_t{1} << (n * m)) +
                          " values, got " + std::to_string(values.size()));
  }
}

double CellField::cell_volume() const { return std::ldexp(1.0, -n * m); }

std::size_t CellField::flat(std::span<const std::uint32_t> idx) const {
  std::size_t f = 0;
  for (auto i : idx) f = (f << m) | i;
  return f;
}

std::vector<std::uint32_t> CellField::unflat(std::size_t flat_index) const {
  std::vector<std::uint32_t> idx(static_cast<std::size_t>(n));
  const std::size_t mask = side() - 1;
  for (int i = n - 1; i >= 0; --i) {
    idx[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(flat_index & mask);
    flat_index >>= m;
  }
  return idx;
}

std::vector<std::size_t> cells_under(const DyadicCube& c, int m) {
  if (c.level > m) {
    throw DomainError("cube level " + std::to_string(c.level) +
                      " exceeds grid depth " + std::to_string(m));
  }
  const int n = c.dim();
  const std::uint32_t width = 1u << (m - c.level);
  std::vector<std::size_t> out;
  out.reserve(std::size_t{1} << (n * (m - c.level)));
  std::vector<std::uint32_t> offset(static_cast<std::size_t>(n), 0);
  while (true) {
    std::size_t f = 0;
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      f = (f << m) | (c.index[ui] * width + offset[ui]);
    }
    out.push_back(f);
    int d = n - 1;
    while (d >= 0 && ++offset[static_cast<std::size_t>(d)] == width) {
      offset[static_cast<std::size_t>(d)] = 0;
      --d;
    }
    if (d < 0) break;
  }
  return out;
}

std::vector<DyadicCube> maximal_subset(std::span<const DyadicCube> cubes) {
  std::vector<DyadicCube> sorted(cubes.begin(), cubes.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<DyadicCube> out;
  for (const auto& c : sorted) {
    bool covered = false;
    DyadicCube a = c;
    while (a.level > 0 && !covered) {
      a = a.parent();
      covered = std::binary_search(sorted.begin(), sorted.end(), a);
    }
    if (!covered) out.push_back(c);
  }
  return out;
}

std::uint64_t morton_encode(std::span<const std::uint32_t> idx, int level) {
  const int n = static_cast<int>(idx.size());
  if (static_cast<long>(n) * level > 63) throw DomainError("Morton code overflow");
  std::uint64_t code = 0;
  for (int b = 0; b < level; ++b) {
    for (int i = 0; i < n; ++i) {
      const std::uint64_t bit = (idx[static_cast<std::size_t>(i)] >> b) & 1u;
      code |= bit << (b * n + (n - 1 - i));
    }
  }
  return code;
}

std::vector<std::uint32_t> morton_decode(std::uint64_t code, int level, int n) {
  std::vector<std::uint32_t> idx(static_cast<std::size_t>(n), 0);
  for (int b = 0; b < level; ++b) {
    for (int i = 0; i < n; ++i) {
      const auto bit = static_cast<std::uint32_t>((code >> (b * n + (n - 1 - i))) & 1u);
      idx[static_cast<std::size_t>(i)] |= bit << b;
    }
  }
  return idx;
}

DyadicCube cube_from_morton(std::uint64_t code, int level, int n) {
  return DyadicCube{level, morton_decode(code, level, n)};
}

std::vector<std::size_t> morton_permutation(int n, int m) {
  check_shape(n, m);
  const std::size_t count = std::size_t{1} << (n * m);
  std::vector<std::size_t> perm(count);
  for (std::size_t z = 0; z < count; ++z) {
    std::size_t f = 0;
    for (int i = 0; i < n; ++i) {
      std::size_t coord = 0;
      for (int b = 0; b < m; ++b) {
        coord |= ((z >> (b * n + (n - 1 - i))) & 1u) << b;
      }
      f = (f << m) | coord;
    }
    perm[z] = f;
  }
  return perm;
}

std::vector<double> to_morton(const CellField& field) {
  const auto perm = morton_permutation(field.n, field.m);
  std::vector<double> out(perm.size());
  for (std::size_t z = 0; z < perm.size(); ++z) out[z] = field.values[perm[z]];
  return out;
}

CellField from_morton(int n, int m, std::span<const double> morton_values) {
  const auto perm = morton_permutation(n, m);
  if (perm.size() != morton_values.size()) {
    throw ValidationError("Morton array length does not match grid shape");
  }
  std::vector<double> values(perm.size());
  for (std::size_t z = 0; z < perm.size(); ++z) values[perm[z]] = morton_values[z];
  return CellField(n, m, std::move(values));
}

}  // namespace masspack
