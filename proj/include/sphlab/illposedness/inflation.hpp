#pragma once

#include <boost/math/differentiation/finite_difference.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "sphlab/core/error.hpp"
#include "sphlab/core/parallel.hpp"
#include "sphlab/estimates/fit.hpp"
#include "sphlab/evolution/nls.hpp"
#include "sphlab/spectral/grid.hpp"
#include "sphlab/spectral/norms.hpp"
#include "sphlab/spectral/transform.hpp"

namespace sphlab {

/// phi(r) = exp(-1/(1-r^2)) for |r| < 1, else 0.
struct BumpProfile {
  static double phi(double r) { return std::abs(r) < 1 ? std::exp(-1 / (1 - r * r)) : 0.0; }
  static double dphi(double r) {
    if (std::abs(r) >= 1) return 0;
    const double q = 1 - r * r;
    return -2 * r / (q * q) * phi(r);
  }
  static double max_value() { return std::exp(-1.0); }
  static constexpr double support_radius = 1;

  /// phi >= 0, vanishes outside the support, nonzero, finite derivatives on a sample set.
  static bool check(int samples = 2001) {
    bool nonzero = false;
    for (int i = 0; i < samples; ++i) {
      const double r = -1.5 + 3.0 * i / (samples - 1);
      const double v = phi(r), d = dphi(r);
      if (!(v >= 0) || !std::isfinite(d)) return false;
      if (std::abs(r) >= 1 && v != 0) return false;
      nonzero = nonzero || v > 0;
    }
    return nonzero;
  }
};

struct InflationConfig {
  double alpha = 7;
  double delta = 0.01;
  std::vector<int> schedule{8, 16, 32};
  int truncation_factor = 8;  // N_max = max(truncation_factor * n, min_truncation)
  int min_truncation = 128;
  double dt_safety = 0.1;     // dt * max(lambda_max, sup f(|u|)) <= dt_safety
  double amplitude_scale = 1; // multiplies kappa_n n^{1/2}; 1 reproduces the construction
  int time_samples = 8;       // stored samples on [0, t_n]
  int refine = 1;
  int workers = 1;

  ManifoldSpec manifold() const { return ManifoldSpec::zonal(3); }
  NonlinearitySpec nonlinearity() const { return NonlinearitySpec::smooth(alpha); }
  double kappa(int n) const { return std::pow(std::log(double(n)), -delta); }
  double t_n(int n) const { return std::pow(std::log(double(n)), 0.125) * std::pow(double(n), -(alpha - 1) / 2); }
  double amplitude(int n) const { return amplitude_scale * kappa(n) * std::sqrt(double(n)); }
  int truncation(int n) const { return std::max(truncation_factor * n, min_truncation); }
  /// f(s) = (1 + s^2)^{(alpha-1)/2}
  double f(double s) const { return std::pow(1 + s * s, (alpha - 1) / 2); }
  double df(double s) const { return (alpha - 1) * s * std::pow(1 + s * s, (alpha - 3) / 2); }

  void validate() const {
    require(alpha > 1 && std::isfinite(alpha), ErrorKind::parameter, "inflation: alpha must be > 1");
    require(delta > 0 && delta < 1 / (8 * alpha), ErrorKind::parameter, "inflation: delta must lie in (0, 1/(8 alpha))");
    require(!schedule.empty(), ErrorKind::parameter, "inflation: empty n schedule");
    for (int n : schedule) require(n >= 2, ErrorKind::parameter, "inflation: n must be >= 2");
    require(truncation_factor >= 8, ErrorKind::parameter, "inflation: truncation factor must be >= 8");
    require(min_truncation >= 0, ErrorKind::parameter, "inflation: min_truncation must be >= 0");
    require(dt_safety > 0 && dt_safety <= 1, ErrorKind::parameter, "inflation: dt_safety must lie in (0, 1]");
    require(amplitude_scale > 0, ErrorKind::parameter, "inflation: amplitude_scale must be > 0");
    require(time_samples >= 1, ErrorKind::parameter, "inflation: time_samples must be >= 1");
    require(refine >= 1, ErrorKind::parameter, "inflation: refine must be >= 1");
  }
};

namespace detail {

inline GridPtr inflation_grid(const InflationConfig& cfg, int D) {
  return build_grid(cfg.manifold(), cfg.nonlinearity().dealiased_exactness(std::max(D, 1)), {.refine = cfg.refine});
}

/// int_{S^3} g(theta) over the zonal sector for g supported in theta < 1/n; composite Gauss-Legendre
template <typename G>
double zonal_integral(G&& g, int n, int panels = 128) {
  using rule = boost::math::quadrature::gauss<double, 30>;
  const double h = std::min(1.0 / n, std::numbers::pi) / panels;
  double acc = 0;
  for (int p = 0; p < panels; ++p) {
    auto f = [&](double th) { return g(th) * std::sin(th) * std::sin(th); };
    acc += rule::integrate(f, p * h, (p + 1) * h);
  }
  return 4 * std::numbers::pi * acc;
}

}  // namespace detail

/// kappa_n n^{1/2} phi(n theta), theta the distance to the pole, projected on degrees <= truncation.
inline SpectralField bump_initial(int n, const InflationConfig& cfg, int truncation = -1) {
  cfg.validate();
  require(n >= 2, ErrorKind::parameter, "bump_initial: n must be >= 2");
  const int D = truncation < 0 ? cfg.truncation(n) : truncation;
  require(D >= 8 * n, ErrorKind::precision, "bump_initial: truncation below 8n does not resolve the bump");
  const auto grid = detail::inflation_grid(cfg, D);
  GridFunction g(grid);
  const double A = cfg.amplitude(n);
  for (size_t i = 0; i < grid->n_polar(); ++i) g.values[i] = A * BumpProfile::phi(n * std::acos(grid->polar_nodes[i]));
  return analyze(g, cfg.manifold(), D).value;
}

/// u0 exp(-i t f(|u0|)), f(s) = (1 + s^2)^{(alpha-1)/2}
inline GridFunction ode_solution(const GridFunction& u0, double t, double alpha) {
  require(alpha > 1, ErrorKind::parameter, "ode_solution: alpha must be > 1");
  const auto nl = NonlinearitySpec::smooth(alpha);
  GridFunction out = u0;
  for (auto& z : out.values) z *= std::polar(1.0, -t * nl.h(std::norm(z)));
  return out;
}

/// E_n(a - b) = (sum_k (n^2 + n^{-2} lambda_k^2) |a_k - b_k|^2)^{1/2}
inline double en_distance(const SpectralField& a, const SpectralField& b, double n) {
  require(a.manifold() == b.manifold(), ErrorKind::parameter, "en_distance: manifold mismatch");
  require(n > 0, ErrorKind::parameter, "en_distance: n must be > 0");
  const auto d = a - b;
  double acc = 0;
  for (const auto& [i, c] : d.coefficients()) {
    const double l = eigenvalue(d.manifold(), i);
    acc += (n * n + l * l / (n * n)) * std::norm(c);
  }
  return std::sqrt(acc);
}

struct GradientReport {
  int n = 0;
  double alpha = 0, kappa = 0, t_n = 0;
  std::vector<double> times;
  std::vector<double> analytic;    // ||grad v_n(t)|| from the explicit phase derivative
  std::vector<double> quadrature;  // same norm from numerically differentiated v_n
  double max_rel_diff = 0;
  double rate = 0;             // least-squares slope of ||grad v_n(t)|| in t over the schedule
  double asymptotic_rate = 0;  // lim ||grad v_n(t)|| / t
  double c = 0, C = 0;         // ||grad v|| >= kappa (c t kappa^{alpha-1} n^{(alpha-1)/2} - C) on the schedule
};

/// ||grad v_n(t)||_{L^2} for v_n = A phi(n theta) exp(-i t f(A phi(n theta))).
inline GradientReport gradient_lower_bound_check(int n, const InflationConfig& cfg, std::vector<double> times = {}) {
  cfg.validate();
  require(n >= 2, ErrorKind::parameter, "gradient_lower_bound_check: n must be >= 2");
  GradientReport r;
  r.n = n;
  r.alpha = cfg.alpha;
  r.kappa = cfg.kappa(n);
  r.t_n = cfg.t_n(n);
  if (times.empty())
    for (int k = 0; k <= 8; ++k) times.push_back(r.t_n * k / 8);
  for (double t : times)
    require(t >= 0 && t <= r.t_n * (1 + 1e-12), ErrorKind::parameter, "gradient_lower_bound_check: times must lie in [0, t_n]");
  r.times = times;
  const double A = cfg.amplitude(n);
  for (double t : times) {
    // |d_theta v|^2 = (n A phi')^2 (1 + t^2 g^2 f'(g)^2), g = A phi
    auto exact = [&](double th) {
      const double g = A * BumpProfile::phi(n * th), dg = n * A * BumpProfile::dphi(n * th);
      const double w = t * g * cfg.df(g);
      return dg * dg * (1 + w * w);
    };
    // complex-step derivative in y = n theta of Re v and Im v
    auto fd = [&](double th) {
      auto parts = [&](std::complex<double> y) {
        const auto g = A * std::exp(-1.0 / (1.0 - y * y));
        const auto ph = t * std::pow(1.0 + g * g, (cfg.alpha - 1) / 2);
        return std::pair{g * std::cos(ph), -g * std::sin(ph)};
      };
      const double y = n * th;
      if (y >= 1) return 0.0;
      using boost::math::differentiation::complex_step_derivative;
      const double dr = n * complex_step_derivative([&](std::complex<double> z) { return parts(z).first; }, y);
      const double di = n * complex_step_derivative([&](std::complex<double> z) { return parts(z).second; }, y);
      return dr * dr + di * di;
    };
    r.analytic.push_back(std::sqrt(detail::zonal_integral(exact, n)));
    r.quadrature.push_back(std::sqrt(detail::zonal_integral(fd, n)));
    r.max_rel_diff = std::max(r.max_rel_diff, std::abs(r.analytic.back() - r.quadrature.back()) / r.analytic.back());
  }
  auto tail = [&](double th) {
    const double g = A * BumpProfile::phi(n * th), dg = n * A * BumpProfile::dphi(n * th);
    return std::pow(dg * g * cfg.df(g), 2);
  };
  r.asymptotic_rate = std::sqrt(detail::zonal_integral(tail, n));
  if (times.size() >= 2) {
    double mt = 0, mg = 0;
    for (size_t k = 0; k < times.size(); ++k) mt += times[k], mg += r.analytic[k];
    mt /= times.size(), mg /= times.size();
    double sxy = 0, sxx = 0;
    for (size_t k = 0; k < times.size(); ++k)
      sxy += (times[k] - mt) * (r.analytic[k] - mg), sxx += (times[k] - mt) * (times[k] - mt);
    r.rate = sxx > 0 ? sxy / sxx : 0;
  }
  auto still = [&](double th) { return std::pow(n * A * BumpProfile::dphi(n * th), 2); };
  r.C = std::sqrt(detail::zonal_integral(still, n)) / r.kappa;
  const double scale = std::pow(r.kappa, cfg.alpha - 1) * std::pow(double(n), (cfg.alpha - 1) / 2);
  r.c = INFINITY;
  for (size_t k = 0; k < times.size(); ++k)
    if (times[k] > 0) r.c = std::min(r.c, (r.analytic[k] / r.kappa + r.C) / (times[k] * scale));
  if (!std::isfinite(r.c)) r.c = 0;
  return r;
}

struct InflationRun {
  int n = 0;
  double kappa = 0, t_n = 0, dt = 0;
  int truncation = 0, steps = 0;
  double h1_initial = 0, h1_final = 0, ratio = 0;
  double en_relative = 0;             // max over stored samples of E_n(u - v) / E_n(v)
  std::vector<double> times, en_series;
  RunStatus status = RunStatus::ok;
  double last_valid_time = 0;
  double aliasing_residual = 0;
  std::string message;
};

struct InflationReport {
  InflationConfig config;
  std::vector<InflationRun> runs;
};

/// One n: NLS from the bump data to t_n, the ODE profile on the same grid, E_n distance and H^1 ratio.
inline InflationRun inflation_run(int n, const InflationConfig& cfg) {
  InflationRun r;
  r.n = n;
  r.kappa = cfg.kappa(n);
  r.t_n = cfg.t_n(n);
  r.truncation = cfg.truncation(n);
  const auto u0 = bump_initial(n, cfg);
  const auto grid = detail::inflation_grid(cfg, r.truncation);
  const auto g0 = synthesize(u0, grid);
  double sup = 0;
  for (const auto& z : g0.values) sup = std::max(sup, std::abs(z));
  const double D = r.truncation;
  const double scale = std::max(D * (D + 2), cfg.f(sup));
  const int steps = std::max(1, int(std::ceil(r.t_n * scale / cfg.dt_safety)));
  r.dt = r.t_n / steps;
  NlsOptions opt;
  opt.T = r.t_n;
  opt.dt = r.dt;
  opt.max_degree = r.truncation;
  opt.output_every = std::max(1, steps / cfg.time_samples);
  opt.refine = cfg.refine;
  const auto res = nls_simulate(u0, cfg.nonlinearity(), opt);
  r.steps = res.steps;
  r.status = res.status;
  r.last_valid_time = res.last_valid_time;
  r.message = res.message;
  r.aliasing_residual = res.conservation.aliasing_residual;
  const auto& tr = res.trajectory;
  r.h1_initial = sobolev_norm(tr.field(0), 1);
  for (size_t i = 0; i < tr.size(); ++i) {
    const auto u = tr.field(i);
    const auto v = analyze(ode_solution(g0, tr.times[i], cfg.alpha), cfg.manifold(), r.truncation).value;
    const double den = en_distance(v, SpectralField(cfg.manifold()), n);
    r.times.push_back(tr.times[i]);
    r.en_series.push_back(den > 0 ? en_distance(u, v, n) / den : 0);
    r.en_relative = std::max(r.en_relative, r.en_series.back());
  }
  r.h1_final = sobolev_norm(tr.field(tr.size() - 1), 1);
  r.ratio = r.h1_final / r.h1_initial;
  return r;
}

inline InflationReport inflation_experiment(const InflationConfig& cfg) {
  cfg.validate();
  InflationReport rep;
  rep.config = cfg;
  rep.runs = parallel_map(cfg.schedule.size(), cfg.workers, [&](size_t k) { return inflation_run(cfg.schedule[k], cfg); });
  return rep;
}

inline void write_csv(std::ostream& os, const InflationReport& rep) {
  os << "n,kappa_n,t_n,h1_0,h1_tn,ratio,en_relative,status\n";
  for (const auto& r : rep.runs)
    os << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", r.n, r.kappa, r.t_n, r.h1_initial,
                      r.h1_final, r.ratio, r.en_relative, to_string(r.status));
}

}  // namespace sphlab
