#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sphlab/core/error.hpp"
#include "sphlab/core/parallel.hpp"
#include "sphlab/estimates/sweeps.hpp"
#include "sphlab/harmonics/gauss.hpp"
#include "sphlab/spectral/grid.hpp"
#include "sphlab/spectral/norms.hpp"
#include "sphlab/spectral/transform.hpp"

namespace sphlab {

enum class StrichartzMethod { time_quadrature, resonance_sum };

inline const char* to_string(StrichartzMethod m) {
  return m == StrichartzMethod::resonance_sum ? "resonance-sum" : "time-quadrature";
}

namespace detail {

inline void check_strichartz_factors(const std::vector<SpectralField>& fs) {
  require(fs.size() == 2 || fs.size() == 3, ErrorKind::parameter, "strichartz: need 2 or 3 factors");
  for (const auto& f : fs) require(f.manifold() == fs[0].manifold(), ErrorKind::parameter, "strichartz: manifold mismatch");
}

inline std::vector<SpectralIndex> keys_of(const SpectralField& f) {
  std::vector<SpectralIndex> b;
  for (const auto& [i, c] : f.coefficients()) b.push_back(i);
  return b;
}

}  // namespace detail

/// || prod_j e^{it Delta} u_j ||_{L^2([0,T] x M)} by quadrature in t. On an integer
/// spectrum with T a multiple of 2 pi a trapezoid rule with more samples than the
/// largest frequency of |prod|^2 is exact; otherwise composite 16-point Gauss-Legendre.
inline Flagged<double> strichartz_time_quadrature(const std::vector<SpectralField>& fs, double T, int refine = 1) {
  detail::check_strichartz_factors(fs);
  require(T > 0 && std::isfinite(T), ErrorKind::parameter, "strichartz: T must be > 0");
  const auto& mf = fs[0].manifold();
  int deg = 0;
  double omega = 0;
  for (const auto& f : fs) {
    deg += f.max_degree();
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& [i, c] : f.coefficients()) {
      const double l = eigenvalue(mf, i);
      lo = std::min(lo, l), hi = std::max(hi, l);
    }
    if (f.empty()) return {0.0, false};
    omega += hi - lo;
  }
  const auto grid = build_grid(mf, 2 * deg, {.refine = refine});
  std::vector<TransformPlan> plans;
  std::vector<std::vector<cplx>> coef;
  std::vector<std::vector<double>> lam;
  for (const auto& f : fs) {
    plans.emplace_back(grid, detail::keys_of(f));
    coef.push_back(f.dense(plans.back().basis()));
    std::vector<double> l;
    for (const auto& i : plans.back().basis()) l.push_back(eigenvalue(mf, i));
    lam.push_back(std::move(l));
  }
  std::vector<double> ts, ws;
  const double periods = T / (2 * std::numbers::pi);
  if (mf.integer_spectrum() && std::abs(periods - std::round(periods)) < 1e-12 && std::round(periods) >= 1) {
    const int M = int(std::ceil(omega)) + 1;
    const int total = M * int(std::round(periods));
    for (int n = 0; n < total; ++n) ts.push_back(T * n / total), ws.push_back(T / total);
  } else {
    const auto rule = gauss_rule(16);
    const int panels = std::max(1, int(std::ceil(omega * T / 4)));
    const double h = T / panels;
    for (int p = 0; p < panels; ++p)
      for (int q = 0; q < rule.size(); ++q) {
        ts.push_back(h * (p + 0.5 * (rule.nodes[q] + 1)));
        ws.push_back(0.5 * h * rule.weights[q]);
      }
  }
  std::vector<cplx> prod(grid->size()), vals(grid->size()), c;
  double acc = 0;
  for (size_t n = 0; n < ts.size(); ++n) {
    std::fill(prod.begin(), prod.end(), cplx(1.0));
    for (size_t j = 0; j < fs.size(); ++j) {
      c = coef[j];
      for (size_t k = 0; k < c.size(); ++k) c[k] *= std::polar(1.0, -lam[j][k] * ts[n]);
      plans[j].synthesize(c, vals);
      for (size_t q = 0; q < prod.size(); ++q) prod[q] *= vals[q];
    }
    double s = 0;
    for (size_t q = 0; q < prod.size(); ++q) s += grid->weight(q) * std::norm(prod[q]);
    acc += ws[n] * s;
  }
  return {std::sqrt(acc), false};
}

/// Same quantity at T = 2 pi from Parseval in t:
/// 2 pi sum_tau || sum_{lambda_1 + ... = tau} P u_1 ... P u_n ||^2_{L^2(M)}.
inline Flagged<double> strichartz_resonance_sum(const std::vector<SpectralField>& fs, int refine = 1) {
  detail::check_strichartz_factors(fs);
  const auto& mf = fs[0].manifold();
  require(mf.integer_spectrum(), ErrorKind::parameter, "strichartz: resonance-sum needs an integer spectrum");
  int deg = 0;
  for (const auto& f : fs) {
    if (f.empty()) return {0.0, false};
    deg += f.max_degree();
  }
  const auto grid = build_grid(mf, 2 * deg, {.refine = refine});
  // eigenspace components of each factor on the grid, keyed by eigenvalue
  std::vector<std::map<long, std::vector<cplx>>> parts(fs.size());
  for (size_t j = 0; j < fs.size(); ++j) {
    std::map<long, SpectralField> split;
    for (const auto& [i, c] : fs[j].coefficients()) {
      auto [it, fresh] = split.try_emplace(std::lround(eigenvalue(mf, i)), mf);
      it->second.set(i, c);
    }
    for (const auto& [l, f] : split) parts[j][l] = synthesize(f, grid).values;
  }
  double acc = 0;
  auto flush = [&](const std::vector<cplx>& v) {
    double s = 0;
    for (size_t q = 0; q < v.size(); ++q) s += grid->weight(q) * std::norm(v[q]);
    acc += s;
  };
  // the distinct resonance values, each accumulated in one buffer at a time
  std::vector<long> taus;
  if (fs.size() == 2) {
    for (const auto& [a, va] : parts[0])
      for (const auto& [b, vb] : parts[1]) taus.push_back(a + b);
  } else {
    for (const auto& [a, va] : parts[0])
      for (const auto& [b, vb] : parts[1])
        for (const auto& [c, vc] : parts[2]) taus.push_back(a + b + c);
  }
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  std::vector<cplx> buf(grid->size());
  for (long tau : taus) {
    std::fill(buf.begin(), buf.end(), cplx{});
    for (const auto& [a, va] : parts[0]) {
      if (fs.size() == 2) {
        const auto it = parts[1].find(tau - a);
        if (it == parts[1].end()) continue;
        for (size_t q = 0; q < buf.size(); ++q) buf[q] += va[q] * it->second[q];
      } else {
        for (const auto& [b, vb] : parts[1]) {
          const auto it = parts[2].find(tau - a - b);
          if (it == parts[2].end()) continue;
          for (size_t q = 0; q < buf.size(); ++q) buf[q] += va[q] * vb[q] * it->second[q];
        }
      }
    }
    flush(buf);
  }
  return {std::sqrt(2 * std::numbers::pi * acc), false};
}

inline Flagged<double> strichartz_product_norm(const std::vector<SpectralField>& fs, double T, StrichartzMethod method,
                                               int refine = 1) {
  if (method == StrichartzMethod::time_quadrature) return strichartz_time_quadrature(fs, T, refine);
  require(std::abs(T - 2 * std::numbers::pi) < 1e-12, ErrorKind::parameter, "strichartz: resonance-sum needs T = 2 pi");
  return strichartz_resonance_sum(fs, refine);
}

struct StrichartzSweepSpec {
  ManifoldSpec manifold = ManifoldSpec::zonal(3);
  std::vector<int> schedule;  // dyadic N values
  int trials = 4;
  std::uint64_t seed = 1;
  StrichartzMethod method = StrichartzMethod::resonance_sum;
  int workers = 1;
  int refine = 1;
};

/// Gaussian random field with every basis function in the dyadic band of N.
inline SpectralField random_band_field(const ManifoldSpec& mf, int N, std::uint64_t seed) {
  // lambda < 4 N^2 bounds the degree by 2 N (2 N rho when a factor has radius rho)
  const int D = int(std::ceil(2 * N * std::max(1.0, mf.rho)));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  SpectralField f(mf);
  for (const auto& i : enumerate_basis(mf, D))
    if (in_dyadic_band(eigenvalue(mf, i), N)) {
      const double re = g(rng), im = g(rng);
      f.set(i, {re, im});
    }
  return f;
}

/// max over trials of ||e^{it Delta} Delta_{N1} f e^{it Delta} Delta_{N2} g||_{L^2([0,2 pi] x M)} / (||f|| ||g||)
/// for all N1 <= N2 in the schedule; fit on the diagonal N1 = N2 against N, model N^{1/2}.
inline EstimateReport strichartz_sweep(const StrichartzSweepSpec& spec) {
  require(spec.schedule.size() >= 3, ErrorKind::parameter, "strichartz_sweep: need at least 3 scales for the fit");
  require(spec.trials >= 1, ErrorKind::parameter, "strichartz_sweep: trials must be >= 1");
  for (size_t i = 0; i < spec.schedule.size(); ++i) {
    require(is_dyadic(spec.schedule[i]), ErrorKind::parameter, "strichartz_sweep: scales must be powers of two");
    if (i) require(spec.schedule[i] > spec.schedule[i - 1], ErrorKind::parameter, "schedule must be increasing");
  }
  std::vector<std::vector<int>> tuples;
  for (size_t i = 0; i < spec.schedule.size(); ++i)
    for (size_t j = i; j < spec.schedule.size(); ++j) tuples.push_back({spec.schedule[i], spec.schedule[j]});
  EstimateReport r;
  r.tag = "strichartz";
  r.manifold = spec.manifold;
  r.families = {"random-band", "random-band"};
  r.param_names = {"N1", "N2"};
  r.model_exponent = 0.5;
  const double T = 2 * std::numbers::pi;
  r.points = parallel_map(tuples.size(), spec.workers, [&](size_t k) {
    SweepPoint pt;
    for (int N : tuples[k]) pt.params.push_back(N);
    pt.x = tuples[k][0];
    pt.model = std::sqrt(double(tuples[k][0]));
    for (int t = 0; t < spec.trials; ++t) {
      std::vector<SpectralField> fs;
      double denom = 1;
      for (size_t j = 0; j < tuples[k].size(); ++j) {
        fs.push_back(random_band_field(spec.manifold, tuples[k][j], trial_seed(spec.seed, k, t) + 1000003 * j));
        denom *= fs.back().l2_norm();
      }
      const auto v = strichartz_product_norm(fs, T, spec.method, spec.refine);
      pt.ratio = std::max(pt.ratio, v.value / denom);
      pt.under_resolved = pt.under_resolved || v.under_resolved;
    }
    return pt;
  });
  std::vector<std::pair<double, double>> s;
  for (const auto& p : r.points) {
    r.bound_constant = std::max(r.bound_constant, p.ratio / p.model);
    r.under_resolved = r.under_resolved || p.under_resolved;
    if (p.params[0] == p.params[1]) s.emplace_back(p.x, p.ratio);
  }
  r.fit = exponent_fit(s, detail::fit_discard(s.size()));
  return r;
}

}  // namespace sphlab
