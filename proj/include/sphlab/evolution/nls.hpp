#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "sphlab/core/error.hpp"
#include "sphlab/evolution/linear.hpp"
#include "sphlab/evolution/nonlinearity.hpp"
#include "sphlab/evolution/trajectory.hpp"
#include "sphlab/spectral/grid.hpp"
#include "sphlab/spectral/transform.hpp"

namespace sphlab {

struct NlsOptions {
  double T = 1;
  double dt = 0.01;
  int max_degree = -1;    // working degree; -1 takes the degree of the data
  int output_every = 1;   // steps between stored samples
  bool linear_step = true;
  bool nonlinear_step = true;
  int refine = 1;
};

enum class RunStatus { ok, blow_up };

inline const char* to_string(RunStatus s) { return s == RunStatus::ok ? "ok" : "blow-up"; }

struct ConservationReport {
  std::vector<double> times, mass, energy;
  double mass_drift = 0;    // max_t |M(t) - M(0)| / M(0)
  double energy_drift = 0;  // max_t |E(t) - E(0)| / |E(0)|
  double aliasing_residual = 0;
  bool under_resolved = false;
};

struct NlsResult {
  Trajectory trajectory;
  ConservationReport conservation;
  RunStatus status = RunStatus::ok;
  double last_valid_time = 0;
  int steps = 0;
  std::string message;
};

namespace detail {

inline double coeff_mass(const std::vector<cplx>& c) {
  double s = 0;
  for (const auto& z : c) s += std::norm(z);
  return std::sqrt(s);
}

inline bool all_finite(const std::vector<cplx>& c) {
  for (const auto& z : c)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e150) return false;
  return true;
}

}  // namespace detail

/// Strang splitting for i u_t + Delta u = F(u): half linear step, exact phase
/// rotation u <- u exp(-i dt h(|u|^2)) on the grid, half linear step.
inline NlsResult nls_simulate(const SpectralField& u0, const NonlinearitySpec& nl, const NlsOptions& opt) {
  require(opt.dt > 0 && std::isfinite(opt.dt), ErrorKind::parameter, "nls_simulate: dt must be > 0");
  require(opt.T >= 0 && std::isfinite(opt.T), ErrorKind::parameter, "nls_simulate: T must be >= 0");
  require(opt.output_every >= 1, ErrorKind::parameter, "nls_simulate: output_every must be >= 1");
  const auto& mf = u0.manifold();
  const int D = opt.max_degree >= 0 ? opt.max_degree : u0.max_degree();
  require(u0.max_degree() <= D, ErrorKind::parameter, "nls_simulate: data exceed the working degree");

  const int steps = opt.T == 0 ? 0 : int(std::ceil(opt.T / opt.dt - 1e-9));
  const double dt = steps ? opt.T / steps : opt.dt;
  const auto grid = build_grid(mf, nl.dealiased_exactness(std::max(D, 1)), {.refine = opt.refine});
  const TransformPlan plan(grid, enumerate_basis(mf, D));
  const auto& basis = plan.basis();

  NlsResult res;
  res.trajectory = Trajectory(mf, basis);
  auto& traj = res.trajectory;
  traj.dt = dt;
  traj.scheme = opt.linear_step && opt.nonlinear_step ? "strang" : (opt.linear_step ? "linear" : "nonlinear-only");
  traj.order = 2;
  traj.nonlinearity = nl.str();
  // plan basis is in enumeration order; the trajectory stores it sorted
  std::vector<size_t> perm(basis.size());
  for (size_t k = 0; k < basis.size(); ++k)
    perm[k] = size_t(std::lower_bound(traj.basis.begin(), traj.basis.end(), basis[k]) - traj.basis.begin());

  std::vector<double> lam(basis.size());
  std::vector<cplx> half(basis.size());
  for (size_t k = 0; k < basis.size(); ++k) {
    lam[k] = eigenvalue(mf, basis[k]);
    half[k] = std::polar(1.0, -lam[k] * dt / 2);
  }
  std::vector<cplx> c = u0.dense(basis), vals(grid->size());

  auto record = [&](double t) {
    std::vector<cplx> row(c.size());
    for (size_t k = 0; k < c.size(); ++k) row[perm[k]] = c[k];
    plan.synthesize(c, vals);
    double grad = 0;
    for (size_t k = 0; k < c.size(); ++k) grad += lam[k] * std::norm(c[k]);
    double pot = 0;
    if (nl.kind != PowerKind::linear)
      for (size_t j = 0; j < vals.size(); ++j) pot += grid->weight(j) * nl.V(vals[j]);
    auto& cr = res.conservation;
    cr.times.push_back(t);
    cr.mass.push_back(detail::coeff_mass(c));
    cr.energy.push_back(grad + pot);
    cr.mass_drift = std::max(cr.mass_drift, std::abs(cr.mass.back() - cr.mass[0]) / cr.mass[0]);
    if (cr.energy[0] != 0)
      cr.energy_drift = std::max(cr.energy_drift, std::abs(cr.energy.back() - cr.energy[0]) / std::abs(cr.energy[0]));
    traj.push(t, std::move(row));
  };

  require(detail::coeff_mass(c) > 0, ErrorKind::degenerate, "nls_simulate: zero initial data");
  if (!nl.polynomial() && nl.kind != PowerKind::linear) {
    // F(u) projected on this grid against a grid of twice the exactness
    plan.synthesize(c, vals);
    std::vector<cplx> fv(vals.size()), a(basis.size()), b(basis.size());
    for (size_t j = 0; j < vals.size(); ++j) fv[j] = nl.F(vals[j]);
    plan.analyze(fv, a);
    const auto fine = build_grid(mf, 2 * grid->exactness);
    const TransformPlan fplan(fine, basis);
    std::vector<cplx> fvals(fine->size());
    fplan.synthesize(c, fvals);
    for (auto& z : fvals) z = nl.F(z);
    fplan.analyze(fvals, b);
    double num = 0, den = 0;
    for (size_t k = 0; k < a.size(); ++k) num += std::norm(a[k] - b[k]), den += std::norm(b[k]);
    res.conservation.aliasing_residual = den > 0 ? std::sqrt(num / den) : 0;
  }
  res.conservation.under_resolved = grid->exactness < nl.dealiased_exactness(D);

  record(0);
  // without the Laplacian the phase flow is pointwise: keep the grid values and
  // project only when sampling
  const bool pointwise = !opt.linear_step && opt.nonlinear_step && nl.kind != PowerKind::linear;
  std::vector<cplx> gv;
  if (pointwise) {
    gv.resize(grid->size());
    plan.synthesize(c, gv);
  }
  for (int n = 1; n <= steps; ++n) {
    if (pointwise) {
      for (auto& z : gv) z *= std::polar(1.0, -dt * nl.h(std::norm(z)));
      plan.analyze(gv, c);
    }
    if (opt.linear_step)
      for (size_t k = 0; k < c.size(); ++k) c[k] *= half[k];
    if (!pointwise && opt.nonlinear_step && nl.kind != PowerKind::linear) {
      plan.synthesize(c, vals);
      for (auto& z : vals) z *= std::polar(1.0, -dt * nl.h(std::norm(z)));
      plan.analyze(vals, c);
    }
    if (opt.linear_step)
      for (size_t k = 0; k < c.size(); ++k) c[k] *= half[k];
    if (!detail::all_finite(c)) {
      res.status = RunStatus::blow_up;
      res.message = "non-finite coefficients after step " + std::to_string(n);
      return res;
    }
    res.steps = n;
    res.last_valid_time = n * dt;
    if (n % opt.output_every == 0 || n == steps) record(n * dt);
  }
  return res;
}

}  // namespace sphlab
