#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace masspack {

enum class GaugeKind { kPower, kLogType, kFromDensity, kTabulated };

// A gauge function h: [0, domain_max] -> [0, inf) with h(0) = 0.
//
// Builtin shapes:
//   power     h(x) = scale * x^alpha,  alpha in (0, 1)
//   log-type  h(x) = x * ln(e * D / x) with D = domain_max; for D = 1 this is
//             x * ln(e / x), increasing on (0, 1] with h(1) = 1
//   tabulated monotone piecewise-linear interpolation through (x, h(x))
//             samples, anchored at (0, 0)
//
// Every gauge may additionally be rescaled in its argument, h_s(x) = h(s * x),
// which is how arc-local problems on the circle are mapped onto [0, 1].
// Instances are immutable; evaluation is pure.
class Gauge {
 public:
  static Gauge power(double alpha, double domain_max = 1.0, double scale = 1.0);
  static Gauge log_type(double domain_max = 1.0);
  // Samples must be strictly increasing in both x and h(x), x > 0.
  static Gauge tabulated(std::vector<std::pair<double, double>> samples);

  // h(arg_scale * x); domain shrinks accordingly.
  Gauge rescaled(double arg_scale) const;

  // Throws DomainError for x < 0 or x > domain_max().
  double operator()(double x) const;

  double domain_max() const { return domain_max_; }
  GaugeKind kind() const { return kind_; }
  // Stable human readable description, e.g. "power:0.5".
  std::string describe() const;

  // Interpolation nodes of a tabulated / density gauge (empty for builtins),
  // in the gauge's own (rescaled) coordinates.
  std::vector<double> nodes() const;

  friend Gauge gauge_from_density(std::span<const std::pair<double, double>>,
                                  double);

 private:
  struct Power {
    double alpha;
    double scale;
  };
  struct LogType {
    double extent;
  };
  struct Table {
    std::vector<double> xs;  // includes leading 0
    std::vector<double> hs;
  };

  Gauge(GaugeKind kind, std::variant<Power, LogType, Table> shape,
        double domain_max);
  double eval_base(double x) const;

  GaugeKind kind_;
  std::variant<Power, LogType, Table> shape_;
  double arg_scale_ = 1.0;
  double domain_max_;
};

// h(x) = x * log(1 / G(x)) from samples (x, G(x)) with ascending x and
// G in (0, 1). The result is repaired to be non-decreasing (running max) and
// then validated: R1 (h(x)/x non-increasing) and R2 (h(x)/x strictly larger
// at the smallest sample than at the largest) must hold on the sample grid,
// and no value may exceed clamp. Violations raise ValidationError naming the
// offending sample.
Gauge gauge_from_density(std::span<const std::pair<double, double>> density,
                         double clamp);

struct RegularityReport {
  bool r1 = false;
  bool r2 = false;
  // First grid point where h(x)/x increased, if any.
  std::optional<double> r1_violation_at;
  // h(x)/x at x = domain_max * 2^-j, j = 0..grid_depth.
  std::vector<double> r2_ratios;
  // (int_0^l h(x)/x dx) / h(l) at l = domain_max * 2^-j, j = 0..grid_depth.
  std::vector<double> r3_ratios;
  double r3_min = 0.0;
  double r3_max = 0.0;
};

// Checks R1 on a dense geometric grid (plus table nodes), R2 as a
// non-decreasing and overall growing trend of h(x)/x on the dyadic grid, and
// reports the Dini-type R3 ratio (never enforced).
RegularityReport check_regularity(const Gauge& g, int grid_depth);

// R2 trend only; cheap enough to call per evaluation batch.
bool r2_trend(const Gauge& g, int grid_depth);

}  // namespace masspack
