#include "masspack/circle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "masspack/error.hpp"
#include "masspack/packer.hpp"
#include "masspack/parallel.hpp"

namespace masspack {

CircleWeight::CircleWeight(std::vector<double> s, double t_) : samples(std::move(s)), t(t_) {
  if (samples.empty()) throw DomainError("circle weight needs at least one sample");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("exponent t must be positive");
  for (double v : samples) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError("weight samples must be finite and >= 0");
    }
  }
}

double CircleWeight::roof(std::size_t j) const {
  const double v = samples[j];
  if (v == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -std::log(v));
}

std::size_t SublevelSet::count() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 1));
}

SublevelSet sublevel_set(const CircleWeight& w, int N) {
  if (N < 1) throw DomainError("sublevel index N must be >= 1");
  SublevelSet s;
  s.N = N;
  s.mask.resize(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) s.mask[j] = w.roof(j) <= N ? 1 : 0;
  return s;
}

namespace {

BlockFunction block_on(const CircleWeight& w, const SublevelSet& level, const Arc& arc,
                       const Gauge& h) {
  const std::size_t M = w.size();
  if (arc.length < 1 || arc.length > M || arc.start >= M) {
    throw DomainError("arc does not fit the circle grid");
  }
  const double delta = w.sample_length();
  BlockFunction b;
  b.arc = arc;
  b.values.assign(arc.length, 0.0);

  std::size_t in_level = 0;
  for (std::size_t i = 0; i < arc.length; ++i) in_level += level.mask[(arc.start + i) % M];
  if (in_level == 0) {
    b.skipped = true;
    return b;
  }

  // Arc-local dyadic tree, padded with zero roof up to a power of two.
  const int depth = std::max(1, static_cast<int>(std::bit_width(arc.length - 1)));
  const std::size_t cells = std::size_t{1} << depth;
  const double tree_len = static_cast<double>(cells) * delta;
  b.tree_length = tree_len;

  CellField roof(1, depth, 0.0);
  for (std::size_t i = 0; i < arc.length; ++i) {
    const std::size_t j = (arc.start + i) % M;
    if (!level.mask[j]) roof.values[i] = w.roof(j) * tree_len;
  }
  const auto packed = pack(RoofGrid(std::move(roof)), h.rescaled(tree_len));
  b.arc_min_cut = packed.raw_value;

  double positive = 0.0;
  for (std::size_t i = 0; i < arc.length; ++i) {
    b.values[i] = packed.f.field.values[i] / tree_len;
    positive += b.values[i];
  }
  b.positive_part_integral = positive * delta;
  b.offset = b.positive_part_integral / (static_cast<double>(in_level) * delta);
  for (std::size_t i = 0; i < arc.length; ++i) {
    if (level.mask[(arc.start + i) % M]) b.values[i] = -b.offset;
  }
  const double arc_len = static_cast<double>(arc.length) * delta;
  b.premise_met = b.positive_part_integral >= kBlockConstant * h(arc_len) * (1.0 - 1e-12);
  return b;
}

}  // namespace

BlockFunction build_block(const CircleWeight& w, int N, const Arc& arc, const Gauge& h) {
  return block_on(w, sublevel_set(w, N), arc, h);
}

GammaChoice choose_gamma(int N, const Gauge& h, double t) {
  if (N < 1) throw DomainError("N must be >= 1");
  if (!(t > 0.0)) throw DomainError("exponent t must be positive");
  const double x = kTwoPi / N;
  const double ratio = h(x) / x;
  GammaChoice g;
  g.gamma = std::min(1.0 / t, 1.0 / std::sqrt(ratio));
  g.r2_warning = !r2_trend(h, 30);
  return g;
}

SplittingFunction build_splitting_function(const CircleWeight& w, int N, const Gauge& h) {
  if (N < 1) throw DomainError("N must be >= 1");
  const std::size_t M = w.size();
  if (M % static_cast<std::size_t>(N) != 0) {
    throw DomainError("grid size " + std::to_string(M) + " is not divisible by N = " +
                      std::to_string(N));
  }
  SplittingFunction sf;
  sf.N = N;
  const auto gamma = choose_gamma(N, h, w.t);
  sf.gamma = gamma.gamma;
  sf.gamma_warning = gamma.r2_warning;
  sf.values.assign(M, 0.0);

  const auto level = sublevel_set(w, N);
  const std::size_t len = M / static_cast<std::size_t>(N);
  for (int k = 0; k < N; ++k) {
    Arc arc{static_cast<std::size_t>(k) * len, len};
    auto block = block_on(w, level, arc, h);
    for (std::size_t i = 0; i < len; ++i) sf.values[arc.start + i] += block.values[i];
    sf.arcs.push_back(arc);
    sf.blocks.push_back(std::move(block));
  }
  return sf;
}

OuterFunction::OuterFunction(const SplittingFunction& fn)
    : values_(fn.values), gamma_(fn.gamma) {
  const std::size_t M = values_.size();
  cos_.resize(M);
  sin_.resize(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(M);
    cos_[j] = std::cos(theta);
    sin_[j] = std::sin(theta);
  }
}

double OuterFunction::max_radius() const {
  return 1.0 - 2.0 * kTwoPi / static_cast<double>(values_.size());
}

void OuterFunction::guard(std::complex<double> z) const {
  if (std::abs(z) > max_radius() * (1.0 + 1e-14)) {
    throw ResolutionError("|z| = " + std::to_string(std::abs(z)) +
                          " is too close to the circle for a grid of " +
                          std::to_string(values_.size()) + " samples");
  }
}

std::complex<double> OuterFunction::value(std::complex<double> z) const {
  guard(z);
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (values_[j] == 0.0) continue;
    const std::complex<double> zeta(cos_[j], sin_[j]);
    acc += (zeta + z) / (zeta - z) * values_[j];
  }
  return std::exp(gamma_ * acc / static_cast<double>(values_.size()));
}

double OuterFunction::log_modulus(std::complex<double> z) const {
  guard(z);
  const double x = z.real();
  const double y = z.imag();
  const double r2 = x * x + y * y;
  const double num = 1.0 - r2;
  double acc = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    const double dx = cos_[j] - x;
    const double dy = sin_[j] - y;
    acc += values_[j] / (dx * dx + dy * dy);
  }
  return gamma_ * num * acc / static_cast<double>(values_.size());
}

double OuterFunction::boundary_modulus(std::size_t j) const {
  return std::exp(gamma_ * values_.at(j));
}

std::complex<double> outer_function(const SplittingFunction& fn, std::complex<double> z) {
  return OuterFunction(fn).value(z);
}

BoundaryAgreement boundary_modulus_check(const OuterFunction& H, double radius) {
  const std::size_t M = H.size();
  BoundaryAgreement out;
  out.radius = radius;

  std::vector<std::complex<double>> u(M);
  parallel_for(M, [&](std::size_t j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(M);
    u[j] = H.log_modulus(std::polar(radius, theta));
  });

  std::vector<std::complex<double>> spec(M);
  const int size = static_cast<int>(M);
  auto* in = reinterpret_cast<fftw_complex*>(u.data());
  auto* out_spec = reinterpret_cast<fftw_complex*>(spec.data());
  fftw_plan fwd = fftw_plan_dft_1d(size, in, out_spec, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);

  // Sampling the Herglotz sum at radius r multiplies Fourier mode q by
  // (r^q + r^(M-q)) / (1 - r^M), and mode 0 by (1 + r^M) / (1 - r^M).
  const double rM = std::pow(radius, static_cast<double>(M));
  for (std::size_t q = 0; q < M; ++q) {
    const double lambda =
        q == 0 ? (1.0 + rM) / (1.0 - rM)
               : (std::pow(radius, static_cast<double>(q)) +
                  std::pow(radius, static_cast<double>(M - q))) / (1.0 - rM);
    spec[q] /= lambda * static_cast<double>(M);
  }
  fftw_plan bwd = fftw_plan_dft_1d(size, out_spec, in, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(bwd);
  fftw_destroy_plan(bwd);

  out.herglotz_max = 0.0;
  out.direct_max = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    out.herglotz_max = std::max(out.herglotz_max, std::exp(u[j].real()));
    out.direct_max = std::max(out.direct_max, H.boundary_modulus(j));
  }
  out.relative_gap = std::abs(out.herglotz_max - out.direct_max) / out.direct_max;
  return out;
}

double max_arc_ratio(std::span<const double> values, const Gauge& h) {
  const std::size_t M = values.size();
  const double delta = kTwoPi / static_cast<double>(M);
  std::vector<long double> prefix(2 * M + 1, 0.0L);
  for (std::size_t i = 0; i < 2 * M; ++i) prefix[i + 1] = prefix[i] + values[i % M];
  std::vector<double> bound(M + 1, 0.0);
  for (std::size_t len = 1; len <= M; ++len) bound[len] = h(static_cast<double>(len) * delta);

  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < M; ++a) {
    for (std::size_t len = 1; len <= M; ++len) {
      const double mass = static_cast<double>(prefix[a + len] - prefix[a]) * delta;
      best = std::max(best, mass / bound[len]);
    }
  }
  return best;
}

SplittingReport verify_splitting(const CircleWeight& w, const Gauge& h, std::span<const int> Ns,
                                 double eps, const SplittingOptions& opts) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  SplittingReport rep;
  rep.t = w.t;
  rep.eps = eps;
  rep.grid_size = w.size();
  const double delta = w.sample_length();

  for (int N : Ns) {
    const auto sf = build_splitting_function(w, N, h);
    const OuterFunction H(sf);
    SplittingEntry e;
    e.N = N;
    e.gamma = sf.gamma;
    e.gamma_warning = sf.gamma_warning;
    for (const auto& b : sf.blocks) {
      e.skipped_arcs += b.skipped ? 1 : 0;
      e.premise_met_arcs += b.premise_met ? 1 : 0;
    }
    e.value_at_zero = H.value(0.0);

    const double tg = w.t * sf.gamma;
    e.sample_bound_applies = tg <= 1.0;
    double integral = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double weighted = std::exp(tg * sf.values[j]) * w.samples[j];
      integral += weighted;
      if (e.sample_bound_applies && weighted > (1.0 + w.samples[j]) * (1.0 + 1e-12)) {
        e.sample_bound_ok = false;
      }
    }
    e.weighted_integral = integral * delta;

    // Radial-angular grid, 1 - |z| geometric from 1/2 down to the guard.
    const int nr = std::max(2, opts.radial_samples);
    const int na = std::max(1, opts.angular_samples);
    const double dmin = 1.0 - H.max_radius();
    for (int i = 0; i < nr; ++i) {
      e.radii.push_back(1.0 - 0.5 * std::pow(dmin / 0.5, static_cast<double>(i) / (nr - 1)));
    }
    std::vector<double> logmod(static_cast<std::size_t>(nr * na));
    parallel_for(logmod.size(), [&](std::size_t p) {
      const double r = e.radii[p / static_cast<std::size_t>(na)];
      const double theta = kTwoPi * static_cast<double>(p % static_cast<std::size_t>(na)) / na;
      logmod[p] = H.log_modulus(std::polar(std::min(r, H.max_radius()), theta));
    });
    e.growth_ratio_max = 0.0;
    for (int i = 0; i < nr; ++i) {
      const double d = 1.0 - e.radii[static_cast<std::size_t>(i)];
      const double hd = h(d) / d;
      double best = 0.0;
      for (int a = 0; a < na; ++a) {
        const double lm = logmod[static_cast<std::size_t>(i * na + a)];
        best = std::max(best, std::exp(lm - eps * hd));
        if (lm > 0.0 && sf.gamma > 0.0) {
          e.poisson_constant = std::max(e.poisson_constant, lm / (2.0 * sf.gamma * hd));
        }
      }
      e.growth_ratio_by_radius.push_back(best);
      e.growth_ratio_max = std::max(e.growth_ratio_max, best);
    }

    // H - 1 is analytic, so its maximum over |z| <= 1/2 sits on |z| = 1/2.
    const int nd = std::max(8, opts.disk_samples);
    std::vector<double> dev(static_cast<std::size_t>(nd));
    parallel_for(dev.size(), [&](std::size_t a) {
      const double theta = kTwoPi * static_cast<double>(a) / nd;
      dev[a] = std::abs(H.value(std::polar(0.5, theta)) - 1.0);
    });
    e.disk_deviation = *std::max_element(dev.begin(), dev.end());

    const double r_check = 1.0 - 4.0 * kTwoPi / static_cast<double>(w.size());
    if (r_check > 0.0) e.boundary = boundary_modulus_check(H, r_check);
    if (opts.arc_ratio) e.max_arc_ratio = max_arc_ratio(sf.values, h);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

CarlesonVerdict is_h_carleson(std::span<const double> arc_lengths, const Gauge& h) {
  double total_len = 0.0;
  for (double l : arc_lengths) {
    if (!(l > 0.0)) throw DomainError("complementary arc lengths must be positive");
    total_len += l;
  }
  if (total_len > kTwoPi * (1.0 + 1e-12)) {
    throw DomainError("complementary arcs exceed the circumference");
  }
  CarlesonVerdict v;
  std::vector<double> partial(arc_lengths.size() + 1, 0.0);
  for (std::size_t k = 0; k < arc_lengths.size(); ++k) {
    partial[k + 1] = partial[k] + h(arc_lengths[k]);
  }
  v.partial_sum = partial.back();
  const std::size_t K = arc_lengths.size();
  if (K < 16) return v;
  const double recent = partial[K] - partial[K / 2];
  const double earlier = partial[K / 2] - partial[K / 4];
  v.tail_ratio = earlier > 0.0 ? recent / earlier : 0.0;
  v.carleson = v.tail_ratio < 0.75;
  return v;
}

}  // namespace masspack
