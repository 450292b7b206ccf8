#include "masspack/demo.hpp"

#include <cmath>
#include <random>

#include "masspack/error.hpp"

namespace masspack {

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<double> demo_weight(DemoWeight kind, std::size_t grid_size, std::uint64_t seed) {
  if (grid_size < 2) throw DomainError("demo weight needs at least two samples");
  std::mt19937_64 rng(seed);
  std::vector<double> w(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) {
    const double pick = unit_uniform(rng);
    const double level = unit_uniform(rng);
    const bool upper_half = 2 * j < grid_size;
    const bool vanish = pick < 0.75 && !(kind == DemoWeight::kControl && upper_half);
    // Positive values stay within the first sublevel set: log(1/w) <= 3.
    w[j] = vanish ? 0.0 : std::exp(-3.0 * level);
  }
  return w;
}

Gauge demo_gauge(const std::string& name, const DemoOptions& opts) {
  if (name == "carleson") return Gauge::log_type(kTwoPi);
  if (name == "alpha-carleson") return Gauge::power(opts.alpha, kTwoPi, opts.eps);
  throw DomainError("unknown demo '" + name + "'");
}

DemoReport run_demo(const std::string& name, const DemoOptions& opts) {
  const Gauge h = demo_gauge(name, opts);
  DemoReport rep;
  rep.name = name;
  rep.gauge = h.describe();

  SplittingOptions sopts;
  sopts.arc_ratio = opts.arc_ratio;
  const CircleWeight divergent(demo_weight(DemoWeight::kDivergentLog, opts.grid_size, opts.seed),
                               opts.t);
  const CircleWeight control(demo_weight(DemoWeight::kControl, opts.grid_size, opts.seed), opts.t);
  rep.divergent = verify_splitting(divergent, h, opts.Ns, opts.eps, sopts);
  rep.control = verify_splitting(control, h, opts.Ns, opts.eps, sopts);

  const auto& d = rep.divergent.entries;
  const auto& c = rep.control.entries;
  if (!d.empty()) {
    rep.divergent_monotone = true;
    rep.disk_deviation_decreasing = true;
    for (std::size_t i = 1; i < d.size(); ++i) {
      rep.divergent_monotone &= d[i].weighted_integral < d[i - 1].weighted_integral;
      rep.disk_deviation_decreasing &= d[i].disk_deviation < d[i - 1].disk_deviation;
    }
    rep.divergent_drop = d.front().weighted_integral / d.back().weighted_integral;
    rep.control_drop = c.front().weighted_integral / c.back().weighted_integral;
  }
  return rep;
}

}  // namespace masspack
