// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sphlab/estimates/sweeps.hpp"
#include "sphlab/evolution/linear.hpp"
#include "sphlab/evolution/nls.hpp"
#include "sphlab/evolution/strichartz.hpp"
#include "sphlab/evolution/xsb.hpp"
#include "sphlab/harmonics/families.hpp"
#include "sphlab/illposedness/inflation.hpp"
#include "sphlab/lattice/counting.hpp"
#include "sphlab/lattice/sweep.hpp"
#include "sphlab/spectral/norms.hpp"
#include "sphlab/spectral/transform.hpp"

using namespace sphlab;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void need(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [fail]");
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SpectralField random_field(const ManifoldSpec& mf, int D, std::uint64_t seed) {
  SpectralField f(mf);
  for (int p = 0; p <= D; ++p) f += (1.0 / (1 + p)) * random_harmonic(mf, p, seed + 31 * p).field;
  return f;
}

SpectralField gaussian_field(const ManifoldSpec& mf, int D, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  SpectralField f(mf);
  for (const auto& i : enumerate_basis(mf, D)) f.set(i, {g(rng), g(rng)});
  return f;
}

const std::vector<int> kQ = {8, 16, 32, 64, 128, 256};

Outcome bilinear_d2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = optimality_sweep({.d = 2, .family = Family::highest_weight, .arity = 2, .schedule = kQ});
  const double t = seconds_since(t0);
  o.need(r.fit.slope >= 0.20 && r.fit.slope <= 0.30, fmt::format("slope {:.4f} in [0.20, 0.30]", r.fit.slope));
  o.need(t < 10, fmt::format("{:.2f} s < 10 s", t));
  return o;
}

Outcome bilinear_d3_d4() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto hw = optimality_sweep({.d = 3, .family = Family::highest_weight, .arity = 2, .schedule = kQ});
  const auto z3 = optimality_sweep({.d = 3, .family = Family::zonal, .arity = 2, .schedule = kQ});
  const auto z4 = optimality_sweep({.d = 4, .family = Family::zonal, .arity = 2, .schedule = kQ});
  const double t = seconds_since(t0);
  o.need(hw.fit.slope >= 0.40 && hw.fit.slope <= 0.60, fmt::format("d=3 highest-weight {:.4f}", hw.fit.slope));
  o.need(z3.fit.slope >= 0.40 && z3.fit.slope <= 0.60, fmt::format("d=3 zonal {:.4f}", z3.fit.slope));
  o.need(z4.fit.slope >= 0.85 && z4.fit.slope <= 1.15, fmt::format("d=4 zonal {:.4f}", z4.fit.slope));
  o.need(t < 30, fmt::format("{:.2f} s < 30 s", t));
  return o;
}

Outcome trilinear_s2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = optimality_sweep({.d = 2, .family = Family::highest_weight, .arity = 3, .schedule = kQ, .r_fixed = 4});
  const double t = seconds_since(t0);
  o.need(r.fit.slope >= 0.20 && r.fit.slope <= 0.30, fmt::format("slope {:.4f} in [0.20, 0.30]", r.fit.slope));
  o.need(t < 30, fmt::format("{:.2f} s < 30 s", t));
  return o;
}

Outcome weyl() {
  Outcome o;
  double worst = 0;
  std::vector<std::pair<double, double>> pts;
  for (int p = 0; p <= 256; ++p) {
    const auto z = zonal_harmonic(3, p);
    const auto g = build_grid(z.manifold(), 2 * p);
    const double l2 = lp_norm(synthesize(z.field, g), 2);
    const double sup = sup_norm(z.field, g);
    const double expect = (p + 1) / std::sqrt(2 * pi * pi);
    worst = std::max(worst, std::abs(sup / l2 - expect) / expect);
    if (p >= 16 && (p & (p - 1)) == 0) pts.emplace_back(p, sup / l2);
  }
  const auto f = exponent_fit(pts);
  o.need(worst < 1e-10, fmt::format("max rel err {:.2e} < 1e-10", worst));
  o.need(std::abs(f.slope - 1) <= 0.05, fmt::format("slope {:.4f}", f.slope));
  return o;
}

Outcome strichartz() {
  Outcome o;
  const auto mf = ManifoldSpec::sphere3();
  double worst = 0;
  for (std::uint64_t k = 0; k < 20; ++k) {
    const int D1 = 1 + int(k * 7 % 16), D2 = 1 + int(k * 11 % 16);
    const auto f = random_field(mf, D1, 100 + k), g = random_field(mf, D2, 500 + k);
    const double a = strichartz_product_norm({f, g}, 2 * pi, StrichartzMethod::time_quadrature).value;
    const double b = strichartz_product_norm({f, g}, 2 * pi, StrichartzMethod::resonance_sum).value;
    worst = std::max(worst, std::abs(a - b) / b);
  }
  o.need(worst < 1e-6, fmt::format("20 pairs max rel diff {:.2e} < 1e-6", worst));
  StrichartzSweepSpec sp;
  sp.schedule = {1, 2, 4, 8, 16, 32};
  sp.trials = 2;
  const auto r = strichartz_sweep(sp);
  o.need(r.fit.slope <= 0.65, fmt::format("sweep slope {:.4f} <= 0.65", r.fit.slope));
  return o;
}

Outcome counting() {
  Outcome o;
  bool exact = true;
  long checked = 0;
  for (i64 N = 1; N <= 8; ++N)
    for (i64 tau = 0; tau <= 2 * 16 * 16 + 8; ++tau, ++checked) exact = exact && gauss_rep_count(tau, N) == oracle::gauss_reps(tau, N);
  for (i64 N1 = 1; N1 <= 8; N1 *= 2)
    for (i64 N2 = 1; N2 <= 8; N2 *= 2)
      for (i64 tau = -4; tau <= 2 * 36 * 36; ++tau, ++checked) exact = exact && alpha_count(N1, N2, tau) == oracle::alpha(N1, N2, tau);
  for (auto [a, b] : {std::pair<i64, i64>{1, 1}, {1, 2}, {2, 1}, {2, 9}})
    for (i64 N1 = 1; N1 <= 8; N1 *= 2)
      for (i64 N2 = 1; N2 <= N1; N2 *= 2)
        for (i64 N3 = 1; N3 <= N2; N3 *= 2) {
          const auto h = oracle::lambda_histogram(a, b, N1, N2, N3);
          const auto kappa = Kappa::rational(a, b);
          i64 lmax = 0, xmax = 0;
          for (const auto& [key, c] : h) lmax = std::max(lmax, key.first), xmax = std::max(xmax, key.second);
          // full (l, xi) rectangle around the support
          for (i64 l = -2; l <= lmax + 2; ++l)
            for (i64 xi = -1; xi <= xmax + 1; ++xi, ++checked) {
              const auto it = h.find({l, xi});
              exact = exact && lambda_count(kappa, l, xi, N1, N2, N3).count == (it == h.end() ? 0 : it->second);
            }
        }
  o.need(exact, fmt::format("{} oracle instances exact", checked));
  std::vector<i64> sched;
  for (i64 N = 1; N <= 256; N *= 2) sched.push_back(N);
  const auto r = count_sweep("gauss", {"tau"}, [](i64 N) { return gauss_rep_max(N, 1000000); }, sched);
  const double slope = r.growth ? r.growth->slope : NAN;
  o.need(r.growth && slope < 0.3, fmt::format("gauss max growth slope {:.4f} < 0.3", slope));
  return o;
}

Outcome free_identity() {
  Outcome o;
  const auto mf = ManifoldSpec::sphere3();
  const auto w = WindowSpec::plateau();
  double worst = 0;
  for (std::uint64_t seed : {3, 5, 9}) {
    const auto u0 = random_field(mf, 4, seed);
    const auto tr = windowed_free_trajectory(u0, w);
    for (auto [s, b] : {std::pair{0.0, 0.6}, {1.0, 0.6}, {1.0, 0.75}}) {
      const double rhs = sobolev_norm(u0, s) * w.hb_norm(b);
      worst = std::max(worst, std::abs(xsb_norm(tr, s, b) - rhs) / rhs);
    }
  }
  o.need(worst < 1e-3, fmt::format("max rel err {:.2e} < 1e-3", worst));
  return o;
}

Outcome conservation() {
  Outcome o;
  SpectralField u0(ManifoldSpec::zonal(3));
  for (int p = 0; p <= 8; ++p) u0.set({p, 0, 0}, 2.0 * std::exp(-0.5 * p) * cplx(1, 0.3 * p));
  const auto t0 = std::chrono::steady_clock::now();
  const auto nl = NonlinearitySpec::pure(3);
  const auto a = nls_simulate(u0, nl, {.T = 1, .dt = 0.005, .max_degree = 64});
  const auto b = nls_simulate(u0, nl, {.T = 1, .dt = 0.0025, .max_degree = 64});
  const double t = seconds_since(t0);
  const double mass = std::max(a.conservation.mass_drift, b.conservation.mass_drift);
  const double ratio = a.conservation.energy_drift / b.conservation.energy_drift;
  o.need(mass < 1e-10, fmt::format("mass drift {:.2e} < 1e-10", mass));
  o.need(ratio >= 3.5 && ratio <= 4.5, fmt::format("energy drift ratio {:.3f} in [3.5, 4.5]", ratio));
  o.need(t < 60, fmt::format("{:.2f} s < 60 s", t));
  return o;
}

Outcome gradient_growth() {
  Outcome o;
  InflationConfig c;
  double worst = 0;
  std::vector<std::pair<double, double>> rates;
  for (int n : {8, 16, 32, 64}) {
    const auto g = gradient_lower_bound_check(n, c);
    worst = std::max(worst, g.max_rel_diff);
    rates.emplace_back(n, g.asymptotic_rate);
  }
  const auto f = exponent_fit(rates);
  const double model = (c.alpha - 1) / 2;
  o.need(worst < 1e-8, fmt::format("quadrature vs analytic {:.2e} < 1e-8", worst));
  o.need(std::abs(f.slope - model) <= 0.15, fmt::format("rate slope {:.4f} vs {:.2f} +- 0.15", f.slope, model));
  return o;
}

Outcome inflation() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  InflationConfig c;
  const auto rep = inflation_experiment(c);
  InflationConfig ctl = c;
  ctl.alpha = 3;
  const auto cr = inflation_experiment(ctl);
  const double t = seconds_since(t0);
  bool increasing = true;
  std::string ratios;
  for (size_t k = 0; k < rep.runs.size(); ++k) {
    ratios += fmt::format("{}{:.5f}", k ? ", " : "", rep.runs[k].ratio);
    if (k) increasing = increasing && rep.runs[k].ratio > rep.runs[k - 1].ratio;
  }
  double lo = INFINITY, hi = 0;
  for (const auto& r : cr.runs) lo = std::min(lo, r.ratio), hi = std::max(hi, r.ratio);
  o.need(increasing, "alpha=7 ratios " + ratios + " strictly increasing");
  o.need(hi / lo < 2, fmt::format("alpha=3 spread {:.3f} < 2", hi / lo));
  o.need(rep.runs[0].en_relative <= 0.1, fmt::format("n=8 relative E_n {:.3f} <= 0.1", rep.runs[0].en_relative));
  o.need(t < 900, fmt::format("{:.1f} s < 900 s", t));
  return o;
}

Outcome properties() {
  Outcome o;
  const std::vector<ManifoldSpec> mfs = {ManifoldSpec::sphere2(),   ManifoldSpec::sphere2(1.7), ManifoldSpec::sphere3(),
                                         ManifoldSpec::product(),   ManifoldSpec::product(0.6), ManifoldSpec::zonal(2),
                                         ManifoldSpec::zonal(3),    ManifoldSpec::zonal(4)};
  double idem = 0, unity = 0, unit = 0, parseval = 0, roundtrip = 0, gauge = 0;
  for (const auto& mf : mfs) {
    const auto f = gaussian_field(mf, 9, 8);
    SpectralField sum(mf);
    for (double N = 1; N <= dyadic_ceiling(f); N *= 2) {
      const auto d = dyadic_project(f, N, DyadicMode::band);
      idem = std::max(idem, (dyadic_project(d, N, DyadicMode::band) - d).l2_norm());
      sum += d;
    }
    unity = std::max(unity, (sum - f).l2_norm() / f.l2_norm());
    const auto g = gaussian_field(mf, 7, 5);
    const auto vals = synthesize(g, build_grid(mf, 14));
    parseval = std::max(parseval, std::abs(lp_norm(vals, 2) - g.l2_norm()) / g.l2_norm());
    roundtrip = std::max(roundtrip, (analyze(vals, mf, 7).value - g).l2_norm() / g.l2_norm());
    for (double t : {0.3, 1.7, -4.0}) unit = std::max(unit, std::abs(linear_propagate(g, t).l2_norm() - g.l2_norm()) / g.l2_norm());
  }
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n01;
  for (const auto& nl : {NonlinearitySpec::pure(3), NonlinearitySpec::pure(7), NonlinearitySpec::pure(2.5),
                         NonlinearitySpec::smooth(7), NonlinearitySpec::smooth(3)})
    for (int k = 0; k < 200; ++k) {
      const cplx z{n01(rng), n01(rng)}, e = std::polar(1.0, n01(rng));
      gauge = std::max(gauge, std::abs(nl.F(e * z) - e * nl.F(z)) / (1 + std::abs(nl.F(z))));
    }
  o.need(idem == 0, fmt::format("projector idempotence {:.1e}", idem));
  o.need(unity < 1e-14, fmt::format("partition of unity {:.1e}", unity));
  o.need(unit < 1e-13, fmt::format("unitarity {:.1e}", unit));
  o.need(parseval < 1e-10 && roundtrip < 1e-10, fmt::format("Parseval {:.1e}, round trip {:.1e}", parseval, roundtrip));
  o.need(gauge < 1e-13, fmt::format("gauge invariance {:.1e}", gauge));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1  bilinear optimality d=2", bilinear_d2},
      {"2  bilinear optimality d=3, d=4 zonal", bilinear_d3_d4},
      {"3  trilinear optimality S2", trilinear_s2},
      {"4  zonal concentration on S3", weyl},
      {"5  Strichartz oracle agreement and sweep", strichartz},
      {"6  counting oracles and Gauss growth", counting},
      {"7  free-solution X^{s,b} identity", free_identity},
      {"8  NLS conservation and order", conservation},
      {"9  phase-gradient formula and rate", gradient_growth},
      {"10 norm inflation at desk scale", inflation},
      {"11 property suites", properties},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    fmt::print("{} {:<42} ({:.1f} s) {}\n", o.pass ? "PASS" : "FAIL", name, seconds_since(t0), o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
