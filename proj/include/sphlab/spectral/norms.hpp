#pragma once

#include <cmath>
#include <functional>

#include "sphlab/core/error.hpp"
#include "sphlab/spectral/field.hpp"
#include "sphlab/spectral/manifold.hpp"

namespace sphlab {

/// (sum_k <lambda_k>^s |c_k|^2)^{1/2}
inline double sobolev_norm(const SpectralField& f, double s) {
  double acc = 0;
  for (const auto& [i, c] : f.coefficients()) acc += std::pow(japanese(eigenvalue(f.manifold(), i)), s) * std::norm(c);
  return std::sqrt(acc);
}

inline bool is_dyadic(double N) {
  if (!(N >= 1) || !std::isfinite(N)) return false;
  int e = 0;
  return std::frexp(N, &e) == 0.5;
}

/// N <= <lambda>^{1/2} < 2N, i.e. N^4 <= 1 + lambda^2 < 16 N^4. Exact for
/// integer eigenvalues below 2^26 and dyadic N below 2^13.
inline bool in_dyadic_band(double lambda, double N) {
  const long double l = lambda, n4 = (long double)N * N * N * N;
  const long double q = 1 + l * l;
  return n4 <= q && q < 16 * n4;
}

/// <lambda>^{1/2} < 2N, the support of S_N.
inline bool in_lowpass(double lambda, double N) {
  const long double l = lambda, n4 = (long double)N * N * N * N;
  return 1 + l * l < 16 * n4;
}

enum class DyadicMode { band, lowpass };

/// Delta_N (band) or S_N (lowpass). S_{1/2} is the zero operator.
inline SpectralField dyadic_project(const SpectralField& f, double N, DyadicMode mode) {
  if (mode == DyadicMode::lowpass && N == 0.5) return SpectralField(f.manifold());
  require(is_dyadic(N), ErrorKind::parameter, "dyadic_project: N must be a power of two >= 1");
  const auto& mf = f.manifold();
  return f.filter([&](const SpectralIndex& i) {
    const double l = eigenvalue(mf, i);
    return mode == DyadicMode::band ? in_dyadic_band(l, N) : in_lowpass(l, N);
  });
}

/// Largest dyadic N whose band is non-empty for some coefficient of f.
inline double dyadic_ceiling(const SpectralField& f) {
  double N = 1;
  for (const auto& [i, c] : f.coefficients())
    while (!in_lowpass(eigenvalue(f.manifold(), i), N)) N *= 2;
  return N;
}

using SpectralWindow = std::function<double(double)>;

namespace windows {

inline SpectralWindow gaussian(double width = 1.0) {
  return [width](double x) { return std::exp(-0.5 * (x / width) * (x / width)); };
}

/// Compactly supported smooth bump exp(1 - 1/(1 - (x/r)^2)), equal to 1 at 0.
inline SpectralWindow bump(double radius = 1.0) {
  return [radius](double x) {
    const double y = x / radius;
    return std::abs(y) < 1 ? std::exp(1 - 1 / (1 - y * y)) : 0.0;
  };
}

}  // namespace windows

/// chi_lambda f: coefficient at index k scaled by chi(sqrt(lambda_k) - lambda).
inline SpectralField smoothed_project(const SpectralField& f, const SpectralWindow& chi, double lambda) {
  const auto& mf = f.manifold();
  return f.map([&](const SpectralIndex& i) { return chi(std::sqrt(eigenvalue(mf, i)) - lambda); });
}

}  // namespace sphlab
