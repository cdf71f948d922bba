#pragma once

#include <cmath>
#include <complex>

#include "sphlab/evolution/nonlinearity.hpp"
#include "sphlab/spectral/field.hpp"
#include "sphlab/spectral/grid.hpp"
#include "sphlab/spectral/transform.hpp"

namespace sphlab {

/// e^{it Delta}: coefficient k picks up e^{-i lambda_k t}.
inline SpectralField linear_propagate(const SpectralField& f, double t) {
  const auto& mf = f.manifold();
  SpectralField out(mf);
  for (const auto& [i, c] : f.coefficients()) out.set(i, c * std::polar(1.0, -eigenvalue(mf, i) * t));
  return out;
}

/// sum_k lambda_k |c_k|^2
inline double gradient_energy(const SpectralField& f) {
  double e = 0;
  for (const auto& [i, c] : f.coefficients()) e += eigenvalue(f.manifold(), i) * std::norm(c);
  return e;
}

/// quadrature of V(u) on the grid
inline double potential_energy(const GridFunction& u, const NonlinearitySpec& nl) {
  if (nl.kind == PowerKind::linear) return 0;
  const auto& g = *u.grid;
  double acc = 0;
  for (size_t k = 0; k < u.values.size(); ++k) acc += g.weight(k) * nl.V(u.values[k]);
  return acc;
}

/// E(u) = int |grad u|^2 + int V(u); flagged when the grid cannot integrate V(u)
/// exactly (polynomial V) or at twice the quadratic rate (otherwise).
inline Flagged<double> energy(const SpectralField& f, const NonlinearitySpec& nl, const GridPtr& grid) {
  const auto u = synthesize(f, grid);
  const int D = f.max_degree();
  return {gradient_energy(f) + potential_energy(u, nl), u.under_resolved || grid->exactness < nl.dealiased_exactness(D)};
}

}  // namespace sphlab
