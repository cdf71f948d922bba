#pragma once

#include <complex>
#include <memory>
#include <numbers>
#include <vector>

#include "sphlab/core/error.hpp"
#include "sphlab/harmonics/gauss.hpp"
#include "sphlab/spectral/manifold.hpp"

namespace sphlab {

using cplx = std::complex<double>;

/// Tensor-product quadrature: a Gauss rule in the polar variable times uniform
/// periodic rules in up to two angles.
///
///   s2     polar x = cos(theta), az1 = phi
///   s3     polar u = cos(2 eta), az1 = phi1, az2 = phi2
///   s2xs1  polar x = cos(theta), az1 = phi, az2 = S^1 angle
///   zonal  polar x = cos(theta), no angles (weights carry the full measure)
///
/// Node (i, j, l) is stored at flat position (i * n_az1 + j) * n_az2 + l.
struct QuadratureGrid {
  ManifoldSpec manifold;
  int exactness = 0;
  bool azimuth_reduced = false;  // one node per angle, weight 2 pi (rotation-invariant integrands only)
  std::vector<double> polar_nodes;
  std::vector<double> polar_weights;  // includes polar measure and radius scaling
  int n_az1 = 1;
  int n_az2 = 1;
  double az_weight = 1;  // product of the angular weights of a single node

  size_t n_polar() const { return polar_nodes.size(); }
  size_t size() const { return polar_nodes.size() * size_t(n_az1) * size_t(n_az2); }
  double az1(int j) const { return 2 * std::numbers::pi * j / n_az1; }
  double az2(int l) const { return 2 * std::numbers::pi * l / n_az2; }
  double weight(size_t flat) const { return polar_weights[flat / (size_t(n_az1) * n_az2)] * az_weight; }

  double weight_sum() const {
    double s = 0;
    for (double w : polar_weights) s += w;
    return s * az_weight * n_az1 * n_az2;
  }
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

struct GridOptions {
  bool azimuth_reduced = false;
  int refine = 1;  // multiply the exactness degree (the --fine flag uses 2)
};

/// Grid integrating every polynomial of total degree <= max_degree exactly.
/// On s2xs1 the degree bounds both the S^2 degree and the S^1 frequency.
inline GridPtr build_grid(const ManifoldSpec& mf, int max_degree, GridOptions opt = {}) {
  require(max_degree >= 0, ErrorKind::parameter, "build_grid: max_degree must be >= 0");
  require(opt.refine >= 1, ErrorKind::parameter, "build_grid: refine must be >= 1");
  using std::numbers::pi;
  auto g = std::make_shared<QuadratureGrid>();
  const int D = max_degree * opt.refine;
  g->manifold = mf;
  g->exactness = D;
  g->azimuth_reduced = opt.azimuth_reduced && mf.kind != ManifoldKind::zonal;
  const int n_az = g->azimuth_reduced ? 1 : D + 1;
  GaussRule rule;
  double scale = 1;
  switch (mf.kind) {
    case ManifoldKind::s2:
      rule = gauss_rule(D / 2 + 1);
      scale = mf.rho * mf.rho;
      g->n_az1 = n_az;
      g->az_weight = 2 * pi / n_az;
      break;
    case ManifoldKind::s3:
      // after the angular integrals a degree-D integrand is a polynomial of degree D/2 in u
      rule = gauss_rule(D / 4 + 1);
      scale = 0.25;
      g->n_az1 = g->n_az2 = n_az;
      g->az_weight = (2 * pi / n_az) * (2 * pi / n_az);
      break;
    case ManifoldKind::s2xs1:
      rule = gauss_rule(D / 2 + 1);
      scale = mf.rho * mf.rho;
      g->n_az1 = g->n_az2 = n_az;
      g->az_weight = (2 * pi / n_az) * (2 * pi / n_az);
      break;
    case ManifoldKind::zonal: {
      const int n = D / 2 + 1;
      const double shell = ManifoldSpec::sphere_volume(mf.dim - 1);
      if (mf.dim == 2) {
        rule = gauss_rule(n);
      } else if (mf.dim == 3) {
        rule = gauss_chebyshev_u_rule(n);
      } else {
        rule = gauss_jacobi_rule(n, 1, 1);
      }
      scale = shell;
      break;
    }
  }
  g->polar_nodes = rule.nodes;
  g->polar_weights = rule.weights;
  for (double& w : g->polar_weights) w *= scale;
  return g;
}

/// Complex samples of a function on a grid.
struct GridFunction {
  GridPtr grid;
  std::vector<cplx> values;
  bool under_resolved = false;

  GridFunction() = default;
  explicit GridFunction(GridPtr g) : grid(std::move(g)), values(grid->size()) {}
  GridFunction(GridPtr g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
    require(values.size() == grid->size(), ErrorKind::parameter, "GridFunction: length does not match grid");
  }
  size_t size() const { return values.size(); }
};

/// (sum_i w_i |v_i|^p)^{1/p}; p = infinity gives max |v_i|.
inline double lp_norm(const GridFunction& f, double p) {
  require(p >= 1, ErrorKind::parameter, "lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0;
  const size_t block = size_t(f.grid->n_az1) * f.grid->n_az2;
  for (size_t i = 0; i < f.values.size(); ++i) {
    const double a = std::abs(f.values[i]);
    const double w = f.grid->polar_weights[i / block];
    s += w * (p == 2 ? a * a : std::pow(a, p));
  }
  s *= f.grid->az_weight;
  return p == 2 ? std::sqrt(s) : std::pow(s, 1 / p);
}

/// Quadrature of f, and of conj(a) b.
inline cplx integrate(const GridFunction& f) {
  cplx s{};
  const size_t block = size_t(f.grid->n_az1) * f.grid->n_az2;
  for (size_t i = 0; i < f.values.size(); ++i) s += f.grid->polar_weights[i / block] * f.values[i];
  return s * f.grid->az_weight;
}

inline cplx inner(const GridFunction& a, const GridFunction& b) {
  require(a.grid == b.grid, ErrorKind::parameter, "inner: grids differ");
  cplx s{};
  const size_t block = size_t(a.grid->n_az1) * a.grid->n_az2;
  for (size_t i = 0; i < a.values.size(); ++i)
    s += a.grid->polar_weights[i / block] * std::conj(a.values[i]) * b.values[i];
  return s * a.grid->az_weight;
}

}  // namespace sphlab
