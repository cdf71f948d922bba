#pragma once

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include "sphlab/core/error.hpp"
#include "sphlab/spectral/field.hpp"
#include "sphlab/spectral/grid.hpp"
#include "sphlab/spectral/manifold.hpp"

namespace sphlab {

/// Time samples of a field on a fixed basis; row i holds the coefficients at times[i].
struct Trajectory {
  ManifoldSpec manifold;
  std::vector<SpectralIndex> basis;
  std::vector<double> times;
  std::vector<std::vector<cplx>> data;
  double dt = 0;
  std::string scheme = "strang";
  int order = 2;
  std::string nonlinearity = "linear";

  Trajectory() = default;
  Trajectory(ManifoldSpec mf, std::vector<SpectralIndex> b) : manifold(mf), basis(std::move(b)) {
    std::sort(basis.begin(), basis.end());
    basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  }

  size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }

  void push(double t, std::vector<cplx> coeffs) {
    require(coeffs.size() == basis.size(), ErrorKind::parameter, "Trajectory: coefficient count differs from basis");
    require(times.empty() || t > times.back(), ErrorKind::parameter, "Trajectory: times must increase");
    times.push_back(t);
    data.push_back(std::move(coeffs));
  }

  void push(double t, const SpectralField& f) {
    require(f.manifold() == manifold, ErrorKind::parameter, "Trajectory: manifold mismatch");
    for (const auto& [i, c] : f.coefficients())
      require(std::binary_search(basis.begin(), basis.end(), i), ErrorKind::index,
              "Trajectory: field has a coefficient outside the basis");
    push(t, f.dense(basis));
  }

  SpectralField field(size_t i) const { return SpectralField::from_dense(manifold, basis, data.at(i)); }

  int max_degree() const {
    int d = 0;
    for (const auto& i : basis) d = std::max(d, degree(manifold, i));
    return d;
  }

  /// Uniform spacing to relative 1e-9.
  bool uniform() const {
    if (times.size() < 2) return true;
    const double h = (times.back() - times.front()) / double(times.size() - 1);
    for (size_t i = 1; i < times.size(); ++i)
      if (std::abs(times[i] - times[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h))) return false;
    return true;
  }
};

/// Sorted union of the coefficient indices of several fields.
inline std::vector<SpectralIndex> support_of(const std::vector<SpectralField>& fs) {
  std::vector<SpectralIndex> out;
  for (const auto& f : fs)
    for (const auto& [i, c] : f.coefficients()) out.push_back(i);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace sphlab
