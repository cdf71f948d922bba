#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

#include "sphlab/core/error.hpp"
#include "sphlab/harmonics/gauss.hpp"
#include "sphlab/harmonics/special.hpp"
#include "sphlab/spectral/field.hpp"
#include "sphlab/spectral/grid.hpp"
#include "sphlab/spectral/manifold.hpp"

namespace sphlab {

/// Point in the coordinates of a manifold. `theta` is the polar angle on
/// s2 / s2xs1 / zonal and the Hopf angle eta in [0, pi/2] on s3.
struct Point {
  double theta = 0;
  double phi1 = 0;
  double phi2 = 0;
};

namespace detail {

inline double pow_or_one(double base, double e) { return e == 0 ? 1.0 : std::exp(e * std::log(base)); }

/// Angular modes (alpha, beta) and radial slot of a basis index.
struct ModeSplit {
  int alpha, beta, radial;
};

inline ModeSplit split_modes(const ManifoldSpec& mf, const SpectralIndex& i) {
  switch (mf.kind) {
    case ManifoldKind::s2: return {i.b, 0, i.a};
    case ManifoldKind::s3: return {i.b, i.c, (i.a - std::abs(i.b) - std::abs(i.c)) / 2};
    case ManifoldKind::s2xs1: return {i.c, i.a, i.b};
    case ManifoldKind::zonal: return {0, 0, i.a};
  }
  return {};
}

}  // namespace detail

/// Normalising factors K_j for the Hopf radial parts
///   K_j ((1+u)/2)^{b/2} ((1-u)/2)^{a/2} q_j(u),  j = 0..jmax,
/// where q_j are orthonormal for ((1-u)/2)^a ((1+u)/2)^b du. The factors are
/// fixed by Gauss-Legendre quadrature of the squared basis function.
inline std::vector<double> hopf_radial_norms(int a, int b, int jmax) {
  const int degree = a + b + 2 * jmax;
  const GaussRule gl = gauss_rule(degree / 2 + 1);
  std::vector<double> acc(jmax + 1, 0.0), col(jmax + 1);
  const double shift = 0.5 * (a + b) * std::numbers::ln2;
  for (int i = 0; i < gl.size(); ++i) {
    const double u = gl.nodes[i];
    jacobi_orthonormal_column(a, b, u, col, shift);
    const double w = detail::pow_or_one((1 + u) / 2, b) * detail::pow_or_one((1 - u) / 2, a);
    for (int j = 0; j <= jmax; ++j) acc[j] += gl.weights[i] * w * col[j] * col[j];
  }
  // angular integrals contribute (2 pi)^2, the Hopf volume element 1/4
  const double ang = std::numbers::pi * std::numbers::pi;
  for (double& v : acc) v = 1 / std::sqrt(ang * v);
  return acc;
}

/// Real radial factors of a group of basis functions sharing angular modes,
/// evaluated at polar coordinate values (x = cos theta, or u = cos 2 eta on s3).
/// Output is row-major [radial slot][node].
inline std::vector<double> radial_table(const ManifoldSpec& mf, int alpha, int beta, const std::vector<int>& slots,
                                        const std::vector<double>& xs) {
  using std::numbers::pi;
  const size_t nx = xs.size();
  std::vector<double> out(slots.size() * nx);
  if (slots.empty()) return out;
  const int smax = *std::max_element(slots.begin(), slots.end());
  switch (mf.kind) {
    case ManifoldKind::s2:
    case ManifoldKind::s2xs1: {
      const int m = std::abs(alpha);
      const double sign = (alpha < 0 && (m % 2)) ? -1.0 : 1.0;
      double scale = sign / mf.rho;
      if (mf.kind == ManifoldKind::s2xs1) scale /= std::sqrt(2 * pi);
      std::vector<double> col(smax - m + 1);
      for (size_t i = 0; i < nx; ++i) {
        legendre_normalised_column(m, xs[i], col);
        for (size_t r = 0; r < slots.size(); ++r) out[r * nx + i] = scale * col[slots[r] - m];
      }
      break;
    }
    case ManifoldKind::s3: {
      const int a = std::abs(beta), b = std::abs(alpha);
      const auto K = hopf_radial_norms(a, b, smax);
      const double shift = 0.5 * (a + b) * std::numbers::ln2;
      std::vector<double> col(smax + 1);
      for (size_t i = 0; i < nx; ++i) {
        const double u = xs[i];
        jacobi_orthonormal_column(a, b, u, col, shift);
        const double env = detail::pow_or_one((1 + u) / 2, 0.5 * b) * detail::pow_or_one((1 - u) / 2, 0.5 * a);
        for (size_t r = 0; r < slots.size(); ++r) out[r * nx + i] = K[slots[r]] * env * col[slots[r]];
      }
      break;
    }
    case ManifoldKind::zonal: {
      const double ab = 0.5 * (mf.dim - 2);
      const double scale = 1 / std::sqrt(ManifoldSpec::sphere_volume(mf.dim - 1));
      std::vector<double> col(smax + 1);
      for (size_t i = 0; i < nx; ++i) {
        jacobi_orthonormal_column(ab, ab, xs[i], col);
        for (size_t r = 0; r < slots.size(); ++r) out[r * nx + i] = scale * col[slots[r]];
      }
      break;
    }
  }
  return out;
}

/// Value of the orthonormal basis function e_i at a point.
inline cplx basis_value(const ManifoldSpec& mf, const SpectralIndex& idx, const Point& pt) {
  require_valid(mf, idx);
  const auto s = detail::split_modes(mf, idx);
  const double x = mf.kind == ManifoldKind::s3 ? std::cos(2 * pt.theta) : std::cos(pt.theta);
  const double r = radial_table(mf, s.alpha, s.beta, {s.radial}, {x})[0];
  return r * std::polar(1.0, s.alpha * pt.phi1 + s.beta * pt.phi2);
}

inline cplx evaluate(const SpectralField& f, const Point& pt) {
  cplx s{};
  for (const auto& [i, c] : f.coefficients()) s += c * basis_value(f.manifold(), i, pt);
  return s;
}

/// Precomputed synthesis/analysis tables for a fixed basis list on a fixed grid.
/// Separable: radial sums per angular group, then two angular sums.
class TransformPlan {
 public:
  TransformPlan(GridPtr grid, std::vector<SpectralIndex> basis) : grid_(std::move(grid)), basis_(std::move(basis)) {
    const auto& mf = grid_->manifold;
    std::map<std::pair<int, int>, size_t> group_of;
    for (size_t k = 0; k < basis_.size(); ++k) {
      require_valid(mf, basis_[k]);
      max_degree_ = std::max(max_degree_, degree(mf, basis_[k]));
      const auto s = detail::split_modes(mf, basis_[k]);
      auto [it, fresh] = group_of.try_emplace({s.alpha, s.beta}, groups_.size());
      if (fresh) groups_.push_back({s.alpha, s.beta, {}, {}, {}, 0, 0});
      groups_[it->second].pos.push_back(k);
      groups_[it->second].slots.push_back(s.radial);
    }
    for (const auto& g : groups_) {
      alphas_.push_back(g.alpha);
      betas_.push_back(g.beta);
    }
    for (auto* v : {&alphas_, &betas_}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    for (auto& g : groups_) {
      g.table = radial_table(mf, g.alpha, g.beta, g.slots, grid_->polar_nodes);
      g.a_idx = size_t(std::lower_bound(alphas_.begin(), alphas_.end(), g.alpha) - alphas_.begin());
      g.b_idx = size_t(std::lower_bound(betas_.begin(), betas_.end(), g.beta) - betas_.begin());
    }
    e1_ = angular_table(alphas_, grid_->n_az1, &QuadratureGrid::az1);
    e2_ = angular_table(betas_, grid_->n_az2, &QuadratureGrid::az2);
  }

  const GridPtr& grid() const { return grid_; }
  const std::vector<SpectralIndex>& basis() const { return basis_; }
  int max_degree() const { return max_degree_; }

  bool synthesis_resolved() const { return grid_->exactness >= max_degree_; }
  bool analysis_resolved() const { return !grid_->azimuth_reduced && grid_->exactness >= 2 * max_degree_; }

  void synthesize(std::span<const cplx> coeffs, std::span<cplx> values) const {
    require(coeffs.size() == basis_.size() && values.size() == grid_->size(), ErrorKind::parameter,
            "synthesize: size mismatch");
    const size_t np = grid_->n_polar(), n1 = grid_->n_az1, n2 = grid_->n_az2;
    const size_t na = alphas_.size();
    std::vector<cplx> G(groups_.size() * np, cplx{});
    for (size_t g = 0; g < groups_.size(); ++g) {
      const auto& grp = groups_[g];
      for (size_t r = 0; r < grp.pos.size(); ++r) {
        const cplx c = coeffs[grp.pos[r]];
        if (c == cplx{}) continue;
        const double* row = &grp.table[r * np];
        cplx* out = &G[g * np];
        for (size_t i = 0; i < np; ++i) out[i] += c * row[i];
      }
    }
    std::vector<cplx> H(na * n2);
    for (size_t i = 0; i < np; ++i) {
      std::fill(H.begin(), H.end(), cplx{});
      for (size_t g = 0; g < groups_.size(); ++g) {
        const cplx gv = G[g * np + i];
        if (gv == cplx{}) continue;
        const cplx* e = &e2_[groups_[g].b_idx * n2];
        cplx* h = &H[groups_[g].a_idx * n2];
        for (size_t l = 0; l < n2; ++l) h[l] += gv * e[l];
      }
      cplx* v = &values[i * n1 * n2];
      std::fill(v, v + n1 * n2, cplx{});
      for (size_t a = 0; a < na; ++a) {
        const cplx* e = &e1_[a * n1];
        const cplx* h = &H[a * n2];
        for (size_t j = 0; j < n1; ++j)
          for (size_t l = 0; l < n2; ++l) v[j * n2 + l] += h[l] * e[j];
      }
    }
  }

  void analyze(std::span<const cplx> values, std::span<cplx> coeffs) const {
    require(coeffs.size() == basis_.size() && values.size() == grid_->size(), ErrorKind::parameter,
            "analyze: size mismatch");
    const size_t np = grid_->n_polar(), n1 = grid_->n_az1, n2 = grid_->n_az2;
    const size_t na = alphas_.size();
    std::vector<cplx> A(na * n2);
    std::vector<cplx> G(groups_.size() * np);
    for (size_t i = 0; i < np; ++i) {
      std::fill(A.begin(), A.end(), cplx{});
      const cplx* v = &values[i * n1 * n2];
      for (size_t a = 0; a < na; ++a) {
        const cplx* e = &e1_[a * n1];
        cplx* acc = &A[a * n2];
        for (size_t j = 0; j < n1; ++j) {
          const cplx ce = std::conj(e[j]);
          for (size_t l = 0; l < n2; ++l) acc[l] += v[j * n2 + l] * ce;
        }
      }
      const double w = grid_->polar_weights[i] * grid_->az_weight;
      for (size_t g = 0; g < groups_.size(); ++g) {
        const cplx* e = &e2_[groups_[g].b_idx * n2];
        const cplx* acc = &A[groups_[g].a_idx * n2];
        cplx s{};
        for (size_t l = 0; l < n2; ++l) s += acc[l] * std::conj(e[l]);
        G[g * np + i] = w * s;
      }
    }
    for (size_t g = 0; g < groups_.size(); ++g) {
      const auto& grp = groups_[g];
      for (size_t r = 0; r < grp.pos.size(); ++r) {
        const double* row = &grp.table[r * np];
        cplx s{};
        for (size_t i = 0; i < np; ++i) s += row[i] * G[g * np + i];
        coeffs[grp.pos[r]] = s;
      }
    }
  }

  GridFunction synthesize(const SpectralField& f) const {
    require(f.manifold() == grid_->manifold, ErrorKind::parameter, "synthesize: manifold mismatch");
    GridFunction out(grid_);
    synthesize(f.dense(basis_), out.values);
    out.under_resolved = !synthesis_resolved();
    return out;
  }

  Flagged<SpectralField> analyze(const GridFunction& g) const {
    require(g.values.size() == grid_->size(), ErrorKind::parameter, "analyze: grid mismatch");
    std::vector<cplx> c(basis_.size());
    analyze(g.values, c);
    return {SpectralField::from_dense(grid_->manifold, basis_, c), !analysis_resolved() || g.under_resolved};
  }

 private:
  struct Group {
    int alpha, beta;
    std::vector<size_t> pos;
    std::vector<int> slots;
    std::vector<double> table;
    size_t a_idx, b_idx;
  };

  std::vector<cplx> angular_table(const std::vector<int>& modes, int n, double (QuadratureGrid::*angle)(int) const) {
    std::vector<cplx> t(modes.size() * size_t(n));
    for (size_t a = 0; a < modes.size(); ++a)
      for (int j = 0; j < n; ++j) t[a * n + j] = std::polar(1.0, modes[a] * ((*grid_).*angle)(j));
    return t;
  }

  GridPtr grid_;
  std::vector<SpectralIndex> basis_;
  std::vector<Group> groups_;
  std::vector<int> alphas_, betas_;
  std::vector<cplx> e1_, e2_;
  int max_degree_ = 0;
};

/// Samples of a field on a grid; flagged when the grid cannot represent the field's degree.
inline GridFunction synthesize(const SpectralField& f, const GridPtr& grid) {
  std::vector<SpectralIndex> basis;
  for (const auto& [i, c] : f.coefficients()) basis.push_back(i);
  return TransformPlan(grid, std::move(basis)).synthesize(f);
}

/// Projection of grid values onto all basis functions of degree <= max_degree.
inline Flagged<SpectralField> analyze(const GridFunction& values, const ManifoldSpec& mf, int max_degree) {
  require(values.grid->manifold == mf, ErrorKind::parameter, "analyze: manifold mismatch");
  return TransformPlan(values.grid, enumerate_basis(mf, max_degree)).analyze(values);
}

/// Max |f| over the grid nodes, plus the two poles on s2 and the zonal sector
/// (Gauss nodes never reach them, and zonal functions peak there).
inline double sup_norm(const SpectralField& f, const GridPtr& grid) {
  double m = lp_norm(synthesize(f, grid), INFINITY);
  const auto k = f.manifold().kind;
  if (k == ManifoldKind::zonal || k == ManifoldKind::s2)
    for (double t : {0.0, std::numbers::pi}) m = std::max(m, std::abs(evaluate(f, {t})));
  return m;
}

}  // namespace sphlab
