#pragma once

#include <cmath>
#include <vector>

#include "sphlab/core/error.hpp"
#include "sphlab/harmonics/families.hpp"
#include "sphlab/spectral/field.hpp"
#include "sphlab/spectral/grid.hpp"
#include "sphlab/spectral/transform.hpp"

namespace sphlab {

namespace detail {

inline void check_factors(const std::vector<SpectralField>& factors, const GridPtr& grid) {
  require(!factors.empty(), ErrorKind::parameter, "multilinear: no factors");
  for (const auto& f : factors)
    require(f.manifold() == grid->manifold, ErrorKind::parameter, "multilinear: factor manifold differs from grid");
  if (grid->azimuth_reduced)
    for (const auto& f : factors)
      require(f.size() <= 1, ErrorKind::parameter,
              "multilinear: azimuth-reduced grid needs single-mode factors (|f| independent of the angles)");
}

inline int degree_sum(const std::vector<SpectralField>& factors) {
  int d = 0;
  for (const auto& f : factors) d += f.max_degree();
  return d;
}

}  // namespace detail

/// || prod_j f_j ||_{L^2} by quadrature; flagged when the grid cannot integrate
/// |prod f_j|^2 exactly.
inline Flagged<double> multilinear_l2(const std::vector<SpectralField>& factors, const GridPtr& grid) {
  detail::check_factors(factors, grid);
  std::vector<cplx> prod(grid->size(), 1.0);
  for (const auto& f : factors) {
    const auto v = synthesize(f, grid);
    for (size_t i = 0; i < prod.size(); ++i) prod[i] *= v.values[i];
  }
  const GridFunction g(grid, std::move(prod));
  return {lp_norm(g, 2), grid->exactness < 2 * detail::degree_sum(factors)};
}

/// Cheapest exact grid for the product: azimuth-reduced when every factor is a single mode.
inline GridPtr product_grid(const std::vector<SpectralField>& factors, int refine = 1) {
  require(!factors.empty(), ErrorKind::parameter, "multilinear: no factors");
  bool single = true;
  for (const auto& f : factors) single = single && f.size() <= 1;
  return build_grid(factors.front().manifold(), 2 * detail::degree_sum(factors),
                    {.azimuth_reduced = single, .refine = refine});
}

inline Flagged<double> multilinear_l2(const std::vector<SpectralField>& factors) {
  return multilinear_l2(factors, product_grid(factors));
}

/// multilinear_l2 divided by the product of the factor L^2 norms.
inline Flagged<double> estimate_ratio(const std::vector<SpectralField>& factors, const GridPtr& grid) {
  double denom = 1;
  for (const auto& f : factors) {
    const double n = f.l2_norm();
    require(n > 0, ErrorKind::degenerate, "estimate_ratio: zero factor");
    denom *= n;
  }
  auto r = multilinear_l2(factors, grid);
  r.value /= denom;
  return r;
}

inline Flagged<double> estimate_ratio(const std::vector<SpectralField>& factors) {
  return estimate_ratio(factors, product_grid(factors));
}

inline std::vector<SpectralField> fields_of(const std::vector<Harmonic>& hs) {
  std::vector<SpectralField> out;
  for (const auto& h : hs) out.push_back(h.field);
  return out;
}

}  // namespace sphlab
