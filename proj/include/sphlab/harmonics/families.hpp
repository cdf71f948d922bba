#pragma once

// Explicit eigenfunction families: zonal Z_p, highest-weight R_p, the S^2 and
// S^3 coordinate bases, and random eigenspace combinations.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "sphlab/core/error.hpp"
#include "sphlab/harmonics/special.hpp"
#include "sphlab/spectral/field.hpp"
#include "sphlab/spectral/manifold.hpp"
#include "sphlab/spectral/transform.hpp"

namespace sphlab {

enum class HarmonicKind { zonal, highest_weight, basis, random };

struct Harmonic {
  SpectralField field;
  HarmonicKind kind = HarmonicKind::basis;
  int degree = 0;
  bool raw = false;
  double normalization = 1;  // multiplies the raw function; 1 for raw variants

  const ManifoldSpec& manifold() const { return field.manifold(); }
  double eigenvalue() const { return sphlab::eigenvalue(field.manifold(), label_of(field.manifold(), *support())); }

  /// |f| does not depend on the angular variables, so one node per angle
  /// integrates any product of such factors exactly.
  bool rotation_symmetric() const { return field.size() == 1; }

 private:
  const SpectralIndex* support() const {
    require(!field.empty(), ErrorKind::degenerate, "harmonic has no coefficients");
    return &field.coefficients().begin()->first;
  }
};

namespace detail {

inline Harmonic single_mode(const ManifoldSpec& mf, const SpectralIndex& i, HarmonicKind kind, bool raw,
                            double raw_coeff) {
  Harmonic h;
  h.field = SpectralField(mf);
  h.field.set(i, raw ? raw_coeff : 1.0);
  h.kind = kind;
  h.degree = degree(mf, i);
  h.raw = raw;
  h.normalization = raw ? 1.0 : 1.0 / std::abs(raw_coeff);
  return h;
}

inline PolynomialFamily zonal_raw_family(int d, int p) {
  switch (d) {
    case 2: return PolynomialFamily::associated_legendre(p, 0);
    case 3: return PolynomialFamily::chebyshev_u(p);
    default: return PolynomialFamily::gegenbauer(p, 1.5);
  }
}

}  // namespace detail

/// Zonal harmonic of degree p on S^d (d = 2, 3, 4), stored in the zonal sector.
/// The raw variant is P_p, U_p = sin((p+1)t)/sin t, or C_p^{3/2} of cos t.
inline Harmonic zonal_harmonic(int d, int p, bool raw = false) {
  require(d >= 2 && d <= 4, ErrorKind::parameter, "zonal_harmonic: d must be 2, 3 or 4");
  require(p >= 0, ErrorKind::parameter, "zonal_harmonic: p must be >= 0");
  const auto mf = ManifoldSpec::zonal(d);
  const double at_pole = radial_table(mf, 0, 0, {p}, {1.0})[0];
  const double raw_coeff = special_eval(detail::zonal_raw_family(d, p), 1.0) / at_pole;
  return detail::single_mode(mf, {p, 0, 0}, HarmonicKind::zonal, raw, raw_coeff);
}

/// R_p = (x1 + i x2)^p restricted to the unit S^d, d = 2 or 3.
inline Harmonic highest_weight_harmonic(int d, int p, bool raw = false) {
  require(d == 2 || d == 3, ErrorKind::parameter, "highest_weight_harmonic: d must be 2 or 3");
  require(p >= 0, ErrorKind::parameter, "highest_weight_harmonic: p must be >= 0");
  if (d == 2) {
    // on the equator Y_p^p = Pbar_p^p(0) e^{i p phi} while |R_p| = 1
    double pbar = 0;
    legendre_normalised_column(p, 0.0, std::span<double>(&pbar, 1));
    return detail::single_mode(ManifoldSpec::sphere2(), {p, p, 0}, HarmonicKind::highest_weight, raw, 1 / pbar);
  }
  const auto mf = ManifoldSpec::sphere3();
  const double at_circle = radial_table(mf, p, 0, {0}, {1.0})[0];  // eta = 0
  return detail::single_mode(mf, {p, p, 0}, HarmonicKind::highest_weight, raw, 1 / at_circle);
}

/// Orthonormal Y_n^m on the sphere of radius rho.
inline Harmonic s2_basis(int n, int m, double rho = 1.0) {
  const auto mf = ManifoldSpec::sphere2(rho);
  require(n >= 0, ErrorKind::parameter, "s2_basis: n must be >= 0");
  require_valid(mf, {n, m, 0});
  return detail::single_mode(mf, {n, m, 0}, HarmonicKind::basis, false, 1.0);
}

/// Orthonormal Hopf harmonic e^{i m1 phi1} e^{i m2 phi2} (Jacobi part in cos 2 eta).
inline Harmonic s3_hopf_basis(int p, int m1, int m2) {
  const auto mf = ManifoldSpec::sphere3();
  require(p >= 0, ErrorKind::parameter, "s3_hopf_basis: p must be >= 0");
  require_valid(mf, {p, m1, m2});
  return detail::single_mode(mf, {p, m1, m2}, HarmonicKind::basis, false, 1.0);
}

/// Unit-norm Gaussian combination of the basis of one eigenspace.
inline Harmonic random_harmonic(const ManifoldSpec& mf, const EigenLabel& label, std::uint64_t seed) {
  const auto basis = eigenspace_basis(mf, label);
  require(!basis.empty(), ErrorKind::index, "random_harmonic: empty eigenspace");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<cplx> c(basis.size());
  double norm2 = 0;
  for (auto& v : c) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v = {re, im};
    norm2 += std::norm(v);
  }
  if (norm2 == 0) c[0] = 1, norm2 = 1;
  Harmonic h;
  h.field = SpectralField(mf);
  for (size_t k = 0; k < basis.size(); ++k) h.field.set(basis[k], c[k] / std::sqrt(norm2));
  h.kind = HarmonicKind::random;
  h.degree = h.field.max_degree();
  return h;
}

inline Harmonic random_harmonic(const ManifoldSpec& mf, int p, std::uint64_t seed) {
  require(p >= 0, ErrorKind::parameter, "random_harmonic: p must be >= 0");
  require(mf.kind != ManifoldKind::s2xs1, ErrorKind::parameter, "random_harmonic: pass an EigenLabel on S2xS1");
  return random_harmonic(mf, EigenLabel{mf.kind == ManifoldKind::s3 ? p + 1 : p, 0}, seed);
}

struct SzegoSample {
  double exact;
  double asymptotic;
  double residual;
};

/// Normalised Z_p on S^3 against C (sin t)^{-1} cos((p+1) t - pi/2); the
/// residual is |exact - asymptotic| * p sin t.
inline SzegoSample szego_check(int d, int p, double theta, double c = 1.0) {
  require(d == 3, ErrorKind::parameter, "szego_check: constants are fixed for d = 3 only (see szego_fit)");
  require(p >= 1, ErrorKind::parameter, "szego_check: p must be >= 1");
  using std::numbers::pi;
  require(theta >= c / p && theta <= pi - c / p, ErrorKind::domain, "szego_check: theta outside [c/p, pi - c/p]");
  const double norm = 1 / std::sqrt(2 * pi * pi);
  const double s = std::sin(theta);
  const double exact = norm * special_eval(PolynomialFamily::chebyshev_u(p), std::cos(theta));
  const double asym = norm / s * std::cos((p + 1) * theta - pi / 2);
  return {exact, asym, std::abs(exact - asym) * p * s};
}

struct SzegoFit {
  double alpha;
  double beta;
  double amplitude;
  double rms;
};

/// Least-squares fit of Z_p(cos t) (sin t)^{(d-1)/2} ~ C cos((p + alpha) t + beta)
/// on t in [pi/4, 3 pi/4].
inline SzegoFit szego_fit(int d, int p, int samples = 512) {
  require(d >= 2 && d <= 4, ErrorKind::parameter, "szego_fit: d must be 2, 3 or 4");
  require(p >= 8 && samples >= 16, ErrorKind::parameter, "szego_fit: need p >= 8 and samples >= 16");
  using std::numbers::pi;
  const auto mf = ManifoldSpec::zonal(d);
  std::vector<double> t(samples), y(samples);
  for (int k = 0; k < samples; ++k) {
    t[k] = pi / 4 + (pi / 2) * k / (samples - 1);
    y[k] = radial_table(mf, 0, 0, {p}, {std::cos(t[k])})[0] * std::pow(std::sin(t[k]), 0.5 * (d - 1));
  }
  struct Lin {
    double A, B, rss;
  };
  auto solve = [&](double alpha) {
    double cc = 0, ss = 0, cs = 0, yc = 0, ys = 0;
    for (int k = 0; k < samples; ++k) {
      const double c = std::cos((p + alpha) * t[k]), s = std::sin((p + alpha) * t[k]);
      cc += c * c, ss += s * s, cs += c * s, yc += y[k] * c, ys += y[k] * s;
    }
    const double det = cc * ss - cs * cs;
    const double A = (yc * ss - ys * cs) / det, B = (ys * cc - yc * cs) / det;
    double rss = 0;
    for (int k = 0; k < samples; ++k) {
      const double r = y[k] - A * std::cos((p + alpha) * t[k]) - B * std::sin((p + alpha) * t[k]);
      rss += r * r;
    }
    return Lin{A, B, rss};
  };
  double best = 0, best_rss = INFINITY;
  for (double a = -1; a <= 3; a += 1e-3) {
    const double r = solve(a).rss;
    if (r < best_rss) best_rss = r, best = a;
  }
  double lo = best - 1e-3, hi = best + 1e-3;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 60; ++it) {
    const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    if (solve(m1).rss < solve(m2).rss)
      hi = m2;
    else
      lo = m1;
  }
  const double alpha = 0.5 * (lo + hi);
  const auto L = solve(alpha);
  // A cos(w t) + B sin(w t) = C cos(w t + beta)
  return {alpha, std::atan2(-L.B, L.A), std::hypot(L.A, L.B), std::sqrt(L.rss / samples)};
}

}  // namespace sphlab
