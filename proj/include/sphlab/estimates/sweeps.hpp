#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sphlab/core/error.hpp"
#include "sphlab/core/parallel.hpp"
#include "sphlab/estimates/fit.hpp"
#include "sphlab/estimates/multilinear.hpp"
#include "sphlab/harmonics/families.hpp"
#include "sphlab/spectral/norms.hpp"

namespace sphlab {

enum class Family { highest_weight, zonal };

inline const char* to_string(Family f) { return f == Family::zonal ? "zonal" : "highest-weight"; }

struct SweepPoint {
  double x = 0;               // fit abscissa: min degree, or min(lambda, mu)
  std::vector<double> params;  // (p, q[, r]) or (lambda, mu)
  double ratio = 0;
  double model = 0;  // Lambda-type comparison value at this point
  bool under_resolved = false;
};

struct EstimateReport {
  std::string tag;
  ManifoldSpec manifold;
  std::vector<std::string> families;
  std::vector<std::string> param_names;
  std::vector<SweepPoint> points;
  double model_exponent = 0;
  ExponentFit fit;                               // pure power law in x
  std::optional<ExponentFit> fit_log_corrected;  // d = 3: ratio / log^{1/2}(x + 1) against x
  double bound_constant = 0;                     // max ratio / model over the sweep
  bool under_resolved = false;
};

namespace detail {

inline size_t fit_discard(size_t n) { return n >= 5 ? 2 : (n >= 4 ? 1 : 0); }

/// Fits use the points in schedule order, skipping off-diagonal pairs when
/// `diagonal_only` is set (projector sweeps fit lambda = mu).
inline void finish_report(EstimateReport& r, int d, bool diagonal_only = false) {
  std::vector<std::pair<double, double>> s, slog;
  for (const auto& p : r.points) {
    require(p.ratio > 0 && std::isfinite(p.ratio), ErrorKind::precision, r.tag + ": non-positive ratio");
    r.bound_constant = std::max(r.bound_constant, p.ratio / p.model);
    r.under_resolved = r.under_resolved || p.under_resolved;
    if (diagonal_only && p.params[0] != p.params[1]) continue;
    s.emplace_back(p.x, p.ratio);
    if (d == 3) slog.emplace_back(p.x, p.ratio / std::sqrt(std::log(p.x + 1)));
  }
  const size_t k = fit_discard(s.size());
  r.fit = exponent_fit(s, k);
  if (d == 3) r.fit_log_corrected = exponent_fit(slog, k);
}

}  // namespace detail

struct OptimalitySpec {
  int d = 2;
  Family family = Family::highest_weight;
  int arity = 2;
  std::vector<int> schedule;  // q values
  int p_factor = 2;           // p = p_factor * q
  int r_fixed = 4;            // third degree for arity 3
  int workers = 1;
  int refine = 1;
};

/// Ratios ||H_p H_q (H_r)|| / prod ||H|| for an optimality family along a schedule.
/// Model exponents: (d-1)/4 highest-weight bilinear, (d-2)/2 zonal bilinear,
/// 1/4 in q for the S^2 trilinear family.
inline EstimateReport optimality_sweep(const OptimalitySpec& spec) {
  require(spec.arity == 2 || spec.arity == 3, ErrorKind::parameter, "optimality_sweep: arity must be 2 or 3");
  require(spec.p_factor >= 1, ErrorKind::parameter, "optimality_sweep: p_factor must be >= 1");
  const bool hw = spec.family == Family::highest_weight;
  if (hw)
    require(spec.d == 2 || spec.d == 3, ErrorKind::parameter, "highest-weight family exists for d = 2, 3");
  else
    require(spec.d >= 2 && spec.d <= 4, ErrorKind::parameter, "zonal family exists for d = 2, 3, 4");
  if (spec.arity == 3)
    require(hw && spec.d == 2, ErrorKind::parameter, "trilinear optimality is defined for R_p on S^2");
  require(!spec.schedule.empty(), ErrorKind::parameter, "optimality_sweep: empty schedule");
  for (size_t i = 0; i < spec.schedule.size(); ++i) {
    require(spec.schedule[i] >= 1, ErrorKind::parameter, "optimality_sweep: degrees must be >= 1");
    if (i) require(spec.schedule[i] > spec.schedule[i - 1], ErrorKind::parameter, "schedule must be increasing");
  }

  auto make = [&](int p) { return hw ? highest_weight_harmonic(spec.d, p) : zonal_harmonic(spec.d, p); };
  EstimateReport r;
  r.tag = "optimality";
  r.manifold = make(0).manifold();
  r.families.assign(spec.arity, to_string(spec.family));
  r.param_names = spec.arity == 2 ? std::vector<std::string>{"p", "q"} : std::vector<std::string>{"p", "q", "r"};
  r.model_exponent = spec.arity == 3 ? 0.25 : (hw ? 0.25 * (spec.d - 1) : 0.5 * (spec.d - 2));

  r.points = parallel_map(spec.schedule.size(), spec.workers, [&](size_t k) {
    const int q = spec.schedule[k], p = spec.p_factor * q;
    std::vector<Harmonic> hs = {make(p), make(q)};
    SweepPoint pt;
    pt.params = {double(p), double(q)};
    if (spec.arity == 3) {
      hs.push_back(make(spec.r_fixed));
      pt.params.push_back(spec.r_fixed);
    }
    const auto fields = fields_of(hs);
    const auto v = estimate_ratio(fields, product_grid(fields, spec.refine));
    pt.x = q;
    pt.ratio = v.value;
    pt.under_resolved = v.under_resolved;
    pt.model = spec.arity == 3 ? std::pow((1.0 + q) * (1.0 + spec.r_fixed), 0.25)
                               : lambda_growth(spec.d, std::min(p, q) + 1.0);
    return pt;
  });
  detail::finish_report(r, spec.d);
  return r;
}

/// Dimension entering Lambda(d, .) for a manifold.
inline int spectral_dimension(const ManifoldSpec& mf) {
  switch (mf.kind) {
    case ManifoldKind::s2: return 2;
    case ManifoldKind::s3:
    case ManifoldKind::s2xs1: return 3;
    case ManifoldKind::zonal: return mf.dim;
  }
  return 3;
}

/// Eigenspace labels whose frequency sqrt(lambda) lies within `radius` of the center.
inline std::vector<EigenLabel> labels_near(const ManifoldSpec& mf, double center, double radius) {
  std::vector<EigenLabel> out;
  const double lo = std::max(0.0, center - radius), hi = center + radius;
  auto keep = [&](const EigenLabel& l) {
    const double s = std::sqrt(eigenvalue(mf, l));
    return s >= lo && s <= hi;
  };
  switch (mf.kind) {
    case ManifoldKind::s3:
      for (int k = 1; k <= int(hi) + 2; ++k)
        if (keep({k, 0})) out.push_back({k, 0});
      break;
    case ManifoldKind::s2:
    case ManifoldKind::zonal:
      for (int n = 0; n <= int(hi * std::max(1.0, mf.rho)) + 2; ++n)
        if (keep({n, 0})) out.push_back({n, 0});
      break;
    case ManifoldKind::s2xs1:
      for (int m = 0; m <= int(hi) + 1; ++m)
        for (int n = 0; n <= int(hi * mf.rho) + 2; ++n)
          if (keep({m, n})) out.push_back({m, n});
      break;
  }
  return out;
}

/// Gaussian random field on the given eigenspaces, deterministic in the seed.
inline SpectralField random_field_on(const ManifoldSpec& mf, const std::vector<EigenLabel>& labels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  SpectralField f(mf);
  for (const auto& l : labels)
    for (const auto& i : eigenspace_basis(mf, l)) {
      const double re = g(rng), im = g(rng);
      f.set(i, {re, im});
    }
  return f;
}

struct ProjectorSpec {
  ManifoldSpec manifold = ManifoldSpec::sphere3();
  SpectralWindow chi = windows::bump(1.0);
  double chi_radius = 1.0;  // chi vanishes (or is negligible) beyond this distance
  std::vector<double> centers;
  int trials = 4;
  std::uint64_t seed = 1;
  int workers = 1;
  int refine = 1;
};

/// Trial seeds: pair k, trial t uses seed + 7919 k + 2 t for f and one more for g.
inline std::uint64_t trial_seed(std::uint64_t seed, size_t pair, int trial) { return seed + 7919 * pair + 2 * trial; }

/// max over trials of ||chi_lambda f chi_mu g|| / (||f|| ||g||) for every pair
/// lambda <= mu of centers; model Lambda(d, min(lambda, mu)).
inline EstimateReport projector_sweep(const ProjectorSpec& spec) {
  require(spec.centers.size() >= 3, ErrorKind::parameter, "projector_sweep: need at least 3 centers for the fit");
  require(spec.trials >= 1, ErrorKind::parameter, "projector_sweep: trials must be >= 1");
  for (double c : spec.centers) require(c >= 1, ErrorKind::parameter, "projector_sweep: centers must be >= 1");
  const int d = spectral_dimension(spec.manifold);
  std::vector<std::pair<double, double>> pairs;
  for (size_t i = 0; i < spec.centers.size(); ++i)
    for (size_t j = i; j < spec.centers.size(); ++j) {
      const double a = std::min(spec.centers[i], spec.centers[j]), b = std::max(spec.centers[i], spec.centers[j]);
      pairs.emplace_back(a, b);
    }
  EstimateReport r;
  r.tag = "projector";
  r.manifold = spec.manifold;
  r.families = {"random", "random"};
  r.param_names = {"lambda", "mu"};
  r.model_exponent = 0.5 * (d - 2) + (d == 2 ? 0.25 : 0.0);
  r.points = parallel_map(pairs.size(), spec.workers, [&](size_t k) {
    const auto [lam, mu] = pairs[k];
    const auto lf = labels_near(spec.manifold, lam, spec.chi_radius);
    const auto lg = labels_near(spec.manifold, mu, spec.chi_radius);
    require(!lf.empty() && !lg.empty(), ErrorKind::degenerate, "projector_sweep: no eigenvalues near a center");
    SweepPoint pt;
    pt.params = {lam, mu};
    pt.x = lam;
    pt.model = lambda_growth(d, lam);
    for (int t = 0; t < spec.trials; ++t) {
      const auto f = random_field_on(spec.manifold, lf, trial_seed(spec.seed, k, t));
      const auto g = random_field_on(spec.manifold, lg, trial_seed(spec.seed, k, t) + 1);
      const std::vector<SpectralField> fac = {smoothed_project(f, spec.chi, lam), smoothed_project(g, spec.chi, mu)};
      if (fac[0].empty() || fac[1].empty()) continue;
      const auto v = multilinear_l2(fac, product_grid(fac, spec.refine));
      pt.ratio = std::max(pt.ratio, v.value / (f.l2_norm() * g.l2_norm()));
      pt.under_resolved = pt.under_resolved || v.under_resolved;
    }
    return pt;
  });
  detail::finish_report(r, d, true);
  return r;
}

}  // namespace sphlab
