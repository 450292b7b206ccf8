#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "masspack/gauge.hpp"

namespace masspack {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Samples of a weight w >= 0 on the uniform grid zeta_j = exp(2 pi i j / M),
// together with the integrability exponent t.
struct CircleWeight {
  std::vector<double> samples;
  double t = 1.0;

  CircleWeight() = default;
  // Throws ValidationError for negative / non-finite samples, DomainError for
  // an empty grid or t <= 0.
  CircleWeight(std::vector<double> samples, double t);

  std::size_t size() const { return samples.size(); }
  double sample_length() const { return kTwoPi / static_cast<double>(samples.size()); }
  // log+(1/w_j); +inf where w_j = 0.
  double roof(std::size_t j) const;
};

// Contiguous run of grid samples, wrapping modulo M.
struct Arc {
  std::size_t start = 0;
  std::size_t length = 0;
};

struct SublevelSet {
  std::vector<char> mask;  // roof(j) <= N
  int N = 1;
  std::size_t count() const;
};

SublevelSet sublevel_set(const CircleWeight& w, int N);

// Zero-mean block supported on one arc: the arc-local optimal packing under
// the roof log+(1/w) off the sublevel set, minus a constant on the sublevel
// set that cancels its mass.
struct BlockFunction {
  Arc arc;
  std::vector<double> values;         // one per arc sample; zero off the arc
  double offset = 0.0;                // p, subtracted on the sublevel part
  double positive_part_integral = 0.0;
  double arc_min_cut = 0.0;           // dyadic min-cut of the arc roof
  double tree_length = 0.0;           // arc length covered by the dyadic tree
  bool skipped = false;               // sublevel part of the arc is empty
  bool premise_met = false;           // positive part >= h(|I|) / 3
};

// C0 in the block bound value <= -C0 h(|I|)/|I| on the sublevel part.
inline constexpr double kBlockConstant = 1.0 / 3.0;

BlockFunction build_block(const CircleWeight& w, int N, const Arc& arc, const Gauge& h);

struct GammaChoice {
  double gamma = 0.0;
  // The gauge shows no R2 growth, so gamma * h(x)/x does not diverge.
  bool r2_warning = false;
};

// gamma_N = min(1/t, (h(x)/x)^{-1/2}) with x = 2 pi / N.
GammaChoice choose_gamma(int N, const Gauge& h, double t);

struct SplittingFunction {
  std::vector<double> values;  // full circle grid
  int N = 1;
  double gamma = 0.0;
  bool gamma_warning = false;
  std::vector<Arc> arcs;
  std::vector<BlockFunction> blocks;
};

// N equal left-closed arcs; throws DomainError unless N divides M.
SplittingFunction build_splitting_function(const CircleWeight& w, int N, const Gauge& h);

// H(z) = exp( (gamma / 2 pi) * sum_j (zeta_j + z)/(zeta_j - z) f(zeta_j) (2 pi / M) ).
class OuterFunction {
 public:
  explicit OuterFunction(const SplittingFunction& fn);

  std::size_t size() const { return values_.size(); }
  double gamma() const { return gamma_; }
  // Largest |z| accepted by value/log_modulus: 1 - 4 pi / M.
  double max_radius() const;

  // Throws ResolutionError beyond max_radius().
  std::complex<double> value(std::complex<double> z) const;
  // log |H(z)|, i.e. the Poisson part only.
  double log_modulus(std::complex<double> z) const;
  // exp(gamma f(zeta_j)).
  double boundary_modulus(std::size_t j) const;

 private:
  void guard(std::complex<double> z) const;

  std::vector<double> values_;
  std::vector<double> cos_;
  std::vector<double> sin_;
  double gamma_;
};

std::complex<double> outer_function(const SplittingFunction& fn, std::complex<double> z);

// Two routes to the boundary modulus: the Herglotz quadrature evaluated on
// the circle of radius r, continued to r = 1 by dividing out the exact
// discrete Poisson multipliers in Fourier space, versus exp(gamma f) read off
// directly.
struct BoundaryAgreement {
  double radius = 0.0;
  double herglotz_max = 0.0;
  double direct_max = 0.0;
  double relative_gap = 0.0;  // |herglotz_max - direct_max| / direct_max
};

BoundaryAgreement boundary_modulus_check(const OuterFunction& H, double radius);

// max over all grid arcs D of (int_D f) / h(|D|). Cost O(M^2).
double max_arc_ratio(std::span<const double> values, const Gauge& h);

struct SplittingEntry {
  int N = 0;
  double gamma = 0.0;
  bool gamma_warning = false;
  std::size_t skipped_arcs = 0;
  std::size_t premise_met_arcs = 0;
  std::complex<double> value_at_zero;
  double weighted_integral = 0.0;       // int |H_N|^t w
  bool sample_bound_applies = false;    // t * gamma <= 1
  bool sample_bound_ok = true;          // |H_N|^t w <= 1 + w per sample
  double growth_ratio_max = 0.0;        // max |H| exp(-eps h(d)/d), d = 1-|z|
  std::vector<double> radii;
  std::vector<double> growth_ratio_by_radius;
  double poisson_constant = 0.0;        // measured C1
  double disk_deviation = 0.0;          // max_{|z|<=1/2} |H_N(z) - 1|
  BoundaryAgreement boundary;
  double max_arc_ratio = 0.0;           // expected <= 2
};

struct SplittingReport {
  double t = 1.0;
  double eps = 1.0;
  std::size_t grid_size = 0;
  std::vector<SplittingEntry> entries;
};

struct SplittingOptions {
  int radial_samples = 12;
  int angular_samples = 64;
  int disk_samples = 256;
  bool arc_ratio = true;
};

// Per-N diagnostics of the outer-function sequence; never throws on
// unfavourable outcomes, the report is descriptive.
SplittingReport verify_splitting(const CircleWeight& w, const Gauge& h,
                                 std::span<const int> Ns, double eps,
                                 const SplittingOptions& opts = {});

struct CarlesonVerdict {
  bool carleson = true;
  double partial_sum = 0.0;
  double tail_ratio = 0.0;  // (S_K - S_K/2) / (S_K/2 - S_K/4)
};

// Sum of h over the complementary arc lengths (in the given order) with a
// convergence verdict from the decay of dyadic tail blocks. Lists shorter
// than 16 arcs are finite families and always converge.
CarlesonVerdict is_h_carleson(std::span<const double> arc_lengths, const Gauge& h);

}  // namespace masspack
