#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "masspack/circle.hpp"
#include "masspack/demo.hpp"
#include "masspack/error.hpp"
#include "oracles.hpp"

using masspack::Arc;
using masspack::CircleWeight;
using masspack::Gauge;
using masspack::kTwoPi;

namespace {

// Weight with zeros, small positive values and values above 1.
CircleWeight random_weight(std::mt19937_64& rng, std::size_t M) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double p_zero = 0.6 * u(rng);
  std::vector<double> w(M);
  for (auto& x : w) {
    const double pick = u(rng);
    if (pick < p_zero) x = 0.0;
    else if (pick < p_zero + 0.2) x = 1.0 + u(rng);
    else x = std::exp(-10.0 * u(rng));
  }
  return CircleWeight(std::move(w), 1.0 + u(rng));
}

// Block property checks against direct recomputation.
void check_block(const CircleWeight& w, int N, const Arc& arc, const Gauge& h,
                 const masspack::BlockFunction& b) {
  const std::size_t M = w.size();
  const double delta = w.sample_length();
  const auto level = masspack::sublevel_set(w, N);
  std::size_t in_level = 0;
  for (std::size_t i = 0; i < arc.length; ++i) in_level += level.mask[(arc.start + i) % M];
  REQUIRE(b.values.size() == arc.length);
  if (in_level == 0) {
    CHECK(b.skipped);
    for (double v : b.values) CHECK(v == 0.0);
    return;
  }
  CHECK_FALSE(b.skipped);

  // (i) roof bound, sign structure.
  for (std::size_t i = 0; i < arc.length; ++i) {
    const std::size_t j = (arc.start + i) % M;
    CHECK(std::isfinite(b.values[i]));
    if (level.mask[j]) {
      CHECK(b.values[i] == -b.offset);
    } else {
      CHECK(b.values[i] >= 0.0);
      CHECK(b.values[i] <= w.roof(j) * (1 + 1e-9));
    }
  }
  // (ii) arc constraint on every grid sub-arc of I.
  std::vector<long double> prefix(arc.length + 1, 0.0L);
  for (std::size_t i = 0; i < arc.length; ++i) prefix[i + 1] = prefix[i] + b.values[i] * delta;
  double worst = 0.0;
  for (std::size_t a = 0; a < arc.length; ++a) {
    for (std::size_t e = a + 1; e <= arc.length; ++e) {
      const double mass = static_cast<double>(prefix[e] - prefix[a]);
      worst = std::max(worst, mass / h(static_cast<double>(e - a) * delta));
    }
  }
  CHECK(worst <= 1.0 + 1e-9);
  // (iii) zero mean.
  CHECK(std::abs(static_cast<double>(prefix[arc.length])) <=
        1e-9 * std::max(1.0, b.positive_part_integral));
  // (iv) depression on the sublevel part when the premise holds.
  const double len = static_cast<double>(arc.length) * delta;
  CHECK(b.premise_met ==
        (b.positive_part_integral >= masspack::kBlockConstant * h(len) * (1 - 1e-12)));
  if (b.premise_met) {
    CHECK(-b.offset <= -masspack::kBlockConstant * h(len) / len * (1 - 1e-9));
  }
  // Positive part is a third of the arc min-cut; recompute that cut
  // independently on the zero-padded arc tree.
  CHECK(oracle::close(b.positive_part_integral, b.arc_min_cut / 3.0, 1e-9));
  int depth = 1;
  while ((std::size_t{1} << depth) < arc.length) ++depth;
  const double tree_len = std::ldexp(delta, depth);
  masspack::CellField roof(1, depth, 0.0);
  for (std::size_t i = 0; i < arc.length; ++i) {
    const std::size_t j = (arc.start + i) % M;
    if (!level.mask[j]) roof.values[i] = w.roof(j) * tree_len;
  }
  CHECK(oracle::close(b.arc_min_cut, oracle::recursive_min_cut(roof, h.rescaled(tree_len)),
                      1e-9));
}

}  // namespace

TEST_CASE("sublevel sets") {
  CHECK(masspack::sublevel_set(CircleWeight(std::vector<double>(8, 1.0), 1), 1).count() == 8);
  CHECK(masspack::sublevel_set(CircleWeight(std::vector<double>(8, 0.0), 1), 9).count() == 0);
  const CircleWeight e5(std::vector<double>(8, std::exp(-5.0)), 1);
  CHECK(masspack::sublevel_set(e5, 4).count() == 0);
  CHECK(masspack::sublevel_set(e5, 5).count() == 8);
  CHECK_THROWS_AS(masspack::sublevel_set(e5, 0), masspack::DomainError);
  CHECK_THROWS_AS(CircleWeight({1.0, -1.0}, 1), masspack::ValidationError);
  CHECK_THROWS_AS(CircleWeight({1.0}, 0.0), masspack::DomainError);
}

TEST_CASE("block on the half-zero arc") {
  // w = 0 on the left half of a 64-sample arc and 1 on the right.
  std::vector<double> s(256, 1.0);
  for (std::size_t i = 0; i < 32; ++i) s[i] = 0.0;
  const CircleWeight w(s, 1.0);
  const auto h = Gauge::power(0.5, kTwoPi);
  const Arc arc{0, 64};
  const auto b = masspack::build_block(w, 1, arc, h);
  const double L = 64 * w.sample_length();
  CHECK(b.arc_min_cut == doctest::Approx(h(L / 2)).epsilon(1e-12));
  CHECK(b.positive_part_integral == doctest::Approx(h(L / 2) / 3).epsilon(1e-12));
  CHECK(b.offset == doctest::Approx(b.positive_part_integral / (L / 2)).epsilon(1e-12));
  check_block(w, 1, arc, h, b);

  const CircleWeight ones(std::vector<double>(64, 1.0), 1.0);
  const auto z = masspack::build_block(ones, 1, Arc{5, 20}, h);
  for (double v : z.values) CHECK(v == 0.0);
  CHECK(z.offset == 0.0);
}

TEST_CASE("random blocks satisfy the block properties") {
  std::mt19937_64 rng(31337);
  const std::vector<std::size_t> sizes{64, 96, 128, 256, 512};
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t M = sizes[rng() % sizes.size()];
    const auto w = random_weight(rng, M);
    const auto h = rng() % 2 ? Gauge::log_type(kTwoPi) : Gauge::power(0.5, kTwoPi);
    const int N = 1 + static_cast<int>(rng() % 8);
    const Arc arc{static_cast<std::size_t>(rng() % M), 1 + static_cast<std::size_t>(rng() % (M / 2))};
    check_block(w, N, arc, h, masspack::build_block(w, N, arc, h));
  }
}

TEST_CASE("splitting function structure") {
  std::mt19937_64 rng(2);
  const auto w = random_weight(rng, 512);
  const auto h = Gauge::log_type(kTwoPi);
  const auto sf = masspack::build_splitting_function(w, 8, h);
  CHECK(sf.arcs.size() == 8);
  double total = 0.0;
  for (double v : sf.values) total += v * w.sample_length();
  CHECK(std::abs(total) <= 1e-9);
  CHECK(masspack::max_arc_ratio(sf.values, h) <= 2.0 * (1 + 1e-9));
  CHECK_THROWS_AS(masspack::build_splitting_function(w, 7, h), masspack::DomainError);

  const auto zero = masspack::build_splitting_function(
      CircleWeight(std::vector<double>(64, 1.0), 1.0), 4, h);
  for (double v : zero.values) CHECK(v == 0.0);
}

TEST_CASE("gamma schedule") {
  const auto h = Gauge::power(0.5, kTwoPi);
  const auto g = masspack::choose_gamma(64, h, 1.0);
  const double x = kTwoPi / 64;
  CHECK(g.gamma == doctest::Approx(std::pow(h(x) / x, -0.5)));
  CHECK_FALSE(g.r2_warning);
  CHECK(masspack::choose_gamma(2, h, 10.0).gamma == doctest::Approx(0.1));
  double prev = 1.0;
  for (int N = 2; N <= 4096; N *= 2) {
    const double gn = masspack::choose_gamma(N, h, 1.0).gamma;
    CHECK(gn <= prev);
    prev = gn;
  }
  const auto linear = Gauge::tabulated({{1.0, 1.0}, {kTwoPi, kTwoPi}});
  CHECK(masspack::choose_gamma(8, linear, 1.0).r2_warning);
}

TEST_CASE("outer function basics") {
  masspack::SplittingFunction sf;
  sf.values.assign(1024, 0.0);
  sf.gamma = 0.5;
  const masspack::OuterFunction zero(sf);
  CHECK(std::abs(zero.value({0.3, -0.4}) - 1.0) < 1e-15);

  sf.values.assign(1024, 2.0);
  const masspack::OuterFunction flat(sf);
  CHECK(std::abs(flat.value({0.5, 0.2}) - std::exp(1.0)) < 1e-12);
  CHECK(flat.log_modulus({-0.1, 0.6}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(flat.value({0.999, 0.0}), masspack::ResolutionError);
  CHECK_NOTHROW(flat.value({flat.max_radius(), 0.0}));

  std::mt19937_64 rng(77);
  const auto w = random_weight(rng, 1024);
  const auto h = Gauge::log_type(kTwoPi);
  const auto real = masspack::build_splitting_function(w, 16, h);
  const masspack::OuterFunction H(real);
  CHECK(std::abs(H.value(0.0) - 1.0) < 1e-9);
  CHECK(std::abs(masspack::outer_function(real, 0.0) - 1.0) < 1e-9);
  for (const std::complex<double> z : {std::complex<double>(0.3, 0.1), {-0.7, 0.2}}) {
    CHECK(H.log_modulus(z) == doctest::Approx(std::log(std::abs(H.value(z)))).epsilon(1e-10));
  }
  const auto agree = masspack::boundary_modulus_check(H, 1.0 - 8.0 * M_PI / 1024);
  CHECK(agree.relative_gap < 1e-6);
}

TEST_CASE("splitting diagnostics are independent of the worker count") {
  std::mt19937_64 rng(5);
  const auto w = random_weight(rng, 1024);
  const auto h = Gauge::power(0.5, kTwoPi);
  const std::vector<int> Ns{4, 16};
  masspack::SplittingOptions opts;
  opts.radial_samples = 4;
  opts.angular_samples = 16;
  setenv("MASSPACK_THREADS", "1", 1);
  const auto a = masspack::verify_splitting(w, h, Ns, 1.0, opts);
  setenv("MASSPACK_THREADS", "5", 1);
  const auto b = masspack::verify_splitting(w, h, Ns, 1.0, opts);
  unsetenv("MASSPACK_THREADS");
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    CHECK(a.entries[i].weighted_integral == b.entries[i].weighted_integral);
    CHECK(a.entries[i].disk_deviation == b.entries[i].disk_deviation);
    CHECK(a.entries[i].growth_ratio_max == b.entries[i].growth_ratio_max);
    CHECK(a.entries[i].boundary.herglotz_max == b.entries[i].boundary.herglotz_max);
  }
}

TEST_CASE("unit weight does not split") {
  const CircleWeight ones(std::vector<double>(256, 1.0), 1.0);
  const std::vector<int> Ns{2, 4, 8};
  const auto rep = masspack::verify_splitting(ones, Gauge::log_type(kTwoPi), Ns, 1.0);
  for (const auto& e : rep.entries) {
    CHECK(e.weighted_integral == doctest::Approx(kTwoPi));
    CHECK(e.disk_deviation < 1e-12);
    CHECK(std::abs(e.value_at_zero - 1.0) < 1e-12);
  }
}

TEST_CASE("h-Carleson verdicts") {
  const auto root = Gauge::power(0.5, kTwoPi);
  const auto logg = Gauge::log_type(kTwoPi);
  CHECK(masspack::is_h_carleson(std::vector<double>{}, root).carleson);
  CHECK(masspack::is_h_carleson(std::vector<double>{}, root).partial_sum == 0.0);

  std::vector<double> geometric, inverse_square;
  for (int k = 1; k <= 40; ++k) geometric.push_back(std::ldexp(1.0, -k));
  for (int k = 1; k <= 4096; ++k) inverse_square.push_back(1.0 / (double(k) * k));
  CHECK(masspack::is_h_carleson(geometric, root).carleson);
  CHECK(masspack::is_h_carleson(inverse_square, logg).carleson);
  // sqrt(1/k^2) = 1/k: the harmonic series.
  const auto harmonic = masspack::is_h_carleson(inverse_square, root);
  CHECK_FALSE(harmonic.carleson);
  CHECK(harmonic.tail_ratio > 0.9);

  CHECK_THROWS_AS(masspack::is_h_carleson(std::vector<double>{1.0, 0.0}, root),
                  masspack::DomainError);
  CHECK_THROWS_AS(masspack::is_h_carleson(std::vector<double>{4.0, 4.0}, root),
                  masspack::DomainError);
}

TEST_CASE("demo gauges and weights") {
  CHECK(masspack::demo_gauge("carleson").kind() == masspack::GaugeKind::kLogType);
  const auto a = masspack::demo_gauge("alpha-carleson");
  CHECK(a(0.25) == doctest::Approx(0.5));
  CHECK_THROWS_AS(masspack::demo_gauge("nope"), masspack::DomainError);
  const auto d1 = masspack::demo_weight(masspack::DemoWeight::kDivergentLog, 128, 9);
  const auto d2 = masspack::demo_weight(masspack::DemoWeight::kDivergentLog, 128, 9);
  CHECK(d1 == d2);
  const auto c = masspack::demo_weight(masspack::DemoWeight::kControl, 128, 9);
  for (std::size_t j = 0; j < 64; ++j) CHECK(c[j] > 0.0);
}
