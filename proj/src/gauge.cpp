#include "masspack/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "masspack/error.hpp"

namespace masspack {

namespace {

constexpr double kDomainSlack = 1e-12;

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Gauge::Gauge(GaugeKind kind, std::variant<Power, LogType, Table> shape,
             double domain_max)
    : kind_(kind), shape_(std::move(shape)), domain_max_(domain_max) {}

Gauge Gauge::power(double alpha, double domain_max, double scale) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("power gauge exponent must lie in (0, 1), got " +
                      fmt_double(alpha));
  }
  if (!(domain_max > 0.0) || !(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("power gauge needs positive domain and scale");
  }
  return Gauge(GaugeKind::kPower, Power{alpha, scale}, domain_max);
}

Gauge Gauge::log_type(double domain_max) {
  if (!(domain_max > 0.0) || !std::isfinite(domain_max)) {
    throw DomainError("log gauge needs a positive finite domain");
  }
  return Gauge(GaugeKind::kLogType, LogType{domain_max}, domain_max);
}

Gauge Gauge::tabulated(std::vector<std::pair<double, double>> samples) {
  Table table;
  table.xs.push_back(0.0);
  table.hs.push_back(0.0);
  for (const auto& [x, hx] : samples) {
    if (x == 0.0 && hx == 0.0 && table.xs.size() == 1) continue;
    if (!std::isfinite(x) || !std::isfinite(hx)) {
      throw ValidationError("gauge table contains a non-finite value");
    }
    if (!(x > table.xs.back())) {
      throw ValidationError("gauge table x values must be strictly increasing (at x = " +
                            fmt_double(x) + ")");
    }
    if (!(hx > table.hs.back())) {
      throw ValidationError("gauge table is not strictly increasing at x = " +
                            fmt_double(x));
    }
    table.xs.push_back(x);
    table.hs.push_back(hx);
  }
  if (table.xs.size() < 2) {
    throw ValidationError("gauge table needs at least one positive sample");
  }
  const double dmax = table.xs.back();
  return Gauge(GaugeKind::kTabulated, std::move(table), dmax);
}

Gauge Gauge::rescaled(double arg_scale) const {
  if (!(arg_scale > 0.0) || !std::isfinite(arg_scale)) {
    throw DomainError("gauge rescale factor must be positive");
  }
  Gauge out = *this;
  out.arg_scale_ = arg_scale_ * arg_scale;
  out.domain_max_ = domain_max_ / arg_scale;
  return out;
}

double Gauge::eval_base(double x) const {
  return std::visit(
      [x](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Power>) {
          return x == 0.0 ? 0.0 : s.scale * std::pow(x, s.alpha);
        } else if constexpr (std::is_same_v<T, LogType>) {
          return x == 0.0 ? 0.0 : x * (1.0 + std::log(s.extent / x));
        } else {
          const auto it = std::upper_bound(s.xs.begin(), s.xs.end(), x);
          if (it == s.xs.end()) return s.hs.back();
          const auto hi = static_cast<std::size_t>(it - s.xs.begin());
          const std::size_t lo = hi - 1;
          const double t = (x - s.xs[lo]) / (s.xs[hi] - s.xs[lo]);
          return s.hs[lo] + t * (s.hs[hi] - s.hs[lo]);
        }
      },
      shape_);
}

double Gauge::operator()(double x) const {
  if (!(x >= 0.0) || x > domain_max_ * (1.0 + kDomainSlack)) {
    throw DomainError("gauge argument " + fmt_double(x) +
                      " outside [0, " + fmt_double(domain_max_) + "]");
  }
  if (x == 0.0) return 0.0;
  const double base = std::min(x, domain_max_) * arg_scale_;
  return eval_base(base);
}

std::string Gauge::describe() const {
  std::string out = std::visit(
      [this](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Power>) {
          std::string d = "power:" + fmt_double(s.alpha);
          if (s.scale != 1.0) d += ":" + fmt_double(s.scale);
          return d;
        } else if constexpr (std::is_same_v<T, LogType>) {
          return "log";
        } else {
          const char* tag = kind_ == GaugeKind::kFromDensity ? "density" : "table";
          return std::string(tag) + "(" + std::to_string(s.xs.size() - 1) +
                 " samples)";
        }
      },
      shape_);
  if (arg_scale_ != 1.0) out += "@" + fmt_double(arg_scale_);
  return out;
}

std::vector<double> Gauge::nodes() const {
  std::vector<double> out;
  if (const auto* t = std::get_if<Table>(&shape_)) {
    for (std::size_t i = 1; i < t->xs.size(); ++i) {
      out.push_back(t->xs[i] / arg_scale_);
    }
  }
  return out;
}

Gauge gauge_from_density(std::span<const std::pair<double, double>> density,
                         double clamp) {
  if (!(clamp > 0.0)) throw DomainError("density clamp must be positive");
  if (density.empty()) throw ValidationError("density has no samples");

  Gauge::Table table;
  table.xs.push_back(0.0);
  table.hs.push_back(0.0);
  double running = 0.0;
  for (const auto& [x, g] : density) {
    if (!(x > table.xs.back()) || !std::isfinite(x)) {
      throw ValidationError("density x values must be positive and strictly increasing (at x = " +
                            fmt_double(x) + ")");
    }
    if (!(g > 0.0 && g < 1.0)) {
      throw ValidationError("density value must lie in (0, 1), got " +
                            fmt_double(g) + " at x = " + fmt_double(x));
    }
    running = std::max(running, x * std::log(1.0 / g));
    if (running > clamp) {
      throw ValidationError("h(x) = " + fmt_double(running) +
                            " exceeds clamp at x = " + fmt_double(x));
    }
    table.xs.push_back(x);
    table.hs.push_back(running);
  }
  if (!(table.hs[1] > 0.0)) {
    throw ValidationError("derived gauge vanishes at the first sample");
  }

  constexpr double kTol = 1e-9;
  for (std::size_t i = 2; i < table.xs.size(); ++i) {
    const double prev = table.hs[i - 1] / table.xs[i - 1];
    const double cur = table.hs[i] / table.xs[i];
    if (cur > prev * (1.0 + kTol)) {
      throw ValidationError("derived gauge fails R1 (h(x)/x increases) at sample x = " +
                            fmt_double(table.xs[i]));
    }
  }
  const double first = table.hs[1] / table.xs[1];
  const double last = table.hs.back() / table.xs.back();
  if (!(first > last * (1.0 + kTol))) {
    throw ValidationError("derived gauge fails R2 (h(x)/x does not grow toward 0) between x = " +
                          fmt_double(table.xs[1]) + " and x = " +
                          fmt_double(table.xs.back()));
  }
  const double dmax = table.xs.back();
  return Gauge(GaugeKind::kFromDensity, std::move(table), dmax);
}

namespace {

std::vector<double> dyadic_ratios(const Gauge& g, int depth) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(depth) + 1);
  for (int j = 0; j <= depth; ++j) {
    const double x = std::ldexp(g.domain_max(), -j);
    out.push_back(g(x) / x);
  }
  return out;
}

bool trend_ok(const std::vector<double>& r) {
  constexpr double kTol = 1e-12;
  for (std::size_t j = 1; j < r.size(); ++j) {
    if (r[j] < r[j - 1] * (1.0 - kTol)) return false;
  }
  return r.back() > r.front() * (1.0 + 1e-9);
}

// int_0^l h(x)/x dx = int_0^inf h(l e^-u) du, composite Simpson on unit
// chunks until the integrand is negligible.
double dini_integral(const Gauge& g, double ell) {
  constexpr int kPerUnit = 32;
  constexpr double kStep = 1.0 / kPerUnit;
  const double href = g(ell);
  double total = 0.0;
  for (int chunk = 0; chunk < 700; ++chunk) {
    double acc = 0.0;
    for (int i = 0; i <= kPerUnit; ++i) {
      const double u = chunk + i * kStep;
      const double w = (i == 0 || i == kPerUnit) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += w * g(ell * std::exp(-u));
    }
    total += acc * kStep / 3.0;
    const double tail = g(ell * std::exp(-(chunk + 1.0)));
    if (tail < 1e-16 * href) break;
  }
  return total;
}

}  // namespace

bool r2_trend(const Gauge& g, int grid_depth) {
  return trend_ok(dyadic_ratios(g, grid_depth));
}

RegularityReport check_regularity(const Gauge& g, int grid_depth) {
  if (grid_depth < 2) throw DomainError("grid_depth must be at least 2");
  RegularityReport rep;

  std::vector<double> xs;
  for (int j = 0; j <= 8 * grid_depth; ++j) {
    xs.push_back(g.domain_max() * std::exp2(-j / 8.0));
  }
  for (double x : g.nodes()) {
    if (x > 0.0 && x <= g.domain_max()) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end(), std::greater<>());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  rep.r1 = true;
  double prev = g(xs.front()) / xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double cur = g(xs[i]) / xs[i];
    if (cur < prev * (1.0 - 1e-12)) {
      rep.r1 = false;
      rep.r1_violation_at = xs[i];
      break;
    }
    prev = cur;
  }

  rep.r2_ratios = dyadic_ratios(g, grid_depth);
  rep.r2 = trend_ok(rep.r2_ratios);

  rep.r3_min = std::numeric_limits<double>::infinity();
  rep.r3_max = 0.0;
  for (int j = 0; j <= grid_depth; ++j) {
    const double ell = std::ldexp(g.domain_max(), -j);
    const double ratio = dini_integral(g, ell) / g(ell);
    rep.r3_ratios.push_back(ratio);
    rep.r3_min = std::min(rep.r3_min, ratio);
    rep.r3_max = std::max(rep.r3_max, ratio);
  }
  return rep;
}

}  // namespace masspack
