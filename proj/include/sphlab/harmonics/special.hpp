#pragma once

// Orthogonal polynomial kernels on [-1,1].
//
// special_eval() returns the classical (unnormalised) polynomials. The
// *_column() routines evaluate a whole degree range at one point with the
// orthonormal recurrences; those never overflow and are what the transforms use.

#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "sphlab/core/error.hpp"

namespace sphlab {

enum class PolynomialKind { associated_legendre, gegenbauer, jacobi, chebyshev_u };

struct PolynomialFamily {
  PolynomialKind kind = PolynomialKind::chebyshev_u;
  int degree = 0;
  double alpha = 0;  // order m (Legendre), weight lambda (Gegenbauer), a (Jacobi)
  double beta = 0;   // b (Jacobi)

  static PolynomialFamily associated_legendre(int n, int m) {
    return {PolynomialKind::associated_legendre, n, double(m), 0};
  }
  static PolynomialFamily gegenbauer(int n, double lambda) {
    return {PolynomialKind::gegenbauer, n, lambda, 0};
  }
  static PolynomialFamily jacobi(int n, double a, double b) { return {PolynomialKind::jacobi, n, a, b}; }
  static PolynomialFamily chebyshev_u(int n) { return {PolynomialKind::chebyshev_u, n, 0, 0}; }
};

namespace detail {

inline void check_family(const PolynomialFamily& f) {
  require(f.degree >= 0, ErrorKind::parameter, "polynomial degree must be >= 0");
  switch (f.kind) {
    case PolynomialKind::associated_legendre:
      require(f.alpha == std::floor(f.alpha), ErrorKind::parameter, "Legendre order must be an integer");
      require(std::abs(f.alpha) <= f.degree, ErrorKind::parameter, "Legendre order |m| must be <= n");
      break;
    case PolynomialKind::gegenbauer:
      require(f.alpha > -0.5, ErrorKind::parameter, "Gegenbauer weight must exceed -1/2");
      break;
    case PolynomialKind::jacobi:
      require(f.alpha > -1 && f.beta > -1, ErrorKind::parameter, "Jacobi parameters must exceed -1");
      break;
    case PolynomialKind::chebyshev_u: break;
  }
}

inline double legendre_unnormalised(int n, int m, double x) {
  // Condon-Shortley phase: P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
  const double s = std::sqrt(std::max(0.0, (1 - x) * (1 + x)));
  double pmm = 1;
  for (int k = 1; k <= m; ++k) pmm *= -(2 * k - 1) * s;
  if (n == m) return pmm;
  double p1 = x * (2 * m + 1) * pmm;
  if (n == m + 1) return p1;
  double p0 = pmm;
  for (int l = m + 2; l <= n; ++l) {
    const double p2 = (x * (2 * l - 1) * p1 - (l + m - 1) * p0) / (l - m);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

inline double gegenbauer(int n, double lambda, double x) {
  if (n == 0) return 1;
  if (lambda == 0) {  // limit convention C_n^{(0)} = (2/n) T_n
    return 2.0 / n * std::cos(n * std::acos(std::clamp(x, -1.0, 1.0)));
  }
  double c0 = 1, c1 = 2 * lambda * x;
  for (int k = 2; k <= n; ++k) {
    const double c2 = (2 * x * (k + lambda - 1) * c1 - (k + 2 * lambda - 2) * c0) / k;
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

inline double jacobi(int n, double a, double b, double x) {
  if (n == 0) return 1;
  double p0 = 1, p1 = (a + 1) + (a + b + 2) * (x - 1) / 2;
  for (int k = 2; k <= n; ++k) {
    const double s = 2 * k + a + b;
    const double c1 = 2 * k * (k + a + b) * (s - 2);
    const double c2 = (s - 1) * (s * (s - 2) * x + a * a - b * b);
    const double c3 = 2 * (k + a - 1) * (k + b - 1) * s;
    const double p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

inline double chebyshev_u(int n, double x) {
  double u0 = 1, u1 = 2 * x;
  if (n == 0) return u0;
  for (int k = 2; k <= n; ++k) {
    const double u2 = 2 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

}  // namespace detail

/// Value of a classical orthogonal polynomial by its three-term recurrence.
inline double special_eval(const PolynomialFamily& f, double x) {
  detail::check_family(f);
  require(x >= -1 - 1e-14 && x <= 1 + 1e-14, ErrorKind::domain, "special_eval: x must lie in [-1,1]");
  x = std::clamp(x, -1.0, 1.0);
  switch (f.kind) {
    case PolynomialKind::associated_legendre: {
      const int m = int(f.alpha);
      if (m >= 0) return detail::legendre_unnormalised(f.degree, m, x);
      // P_n^{-m} = (-1)^m (n-m)!/(n+m)! P_n^m
      const int am = -m;
      double ratio = 1;
      for (int k = f.degree - am + 1; k <= f.degree + am; ++k) ratio /= k;
      return ((am % 2) ? -1.0 : 1.0) * ratio * detail::legendre_unnormalised(f.degree, am, x);
    }
    case PolynomialKind::gegenbauer: return detail::gegenbauer(f.degree, f.alpha, x);
    case PolynomialKind::jacobi: return detail::jacobi(f.degree, f.alpha, f.beta, x);
    case PolynomialKind::chebyshev_u: return detail::chebyshev_u(f.degree, x);
  }
  return 0;
}

/// Recurrence coefficients of the monic Jacobi polynomials,
/// p_{n+1} = (x - alpha_n) p_n - beta_n p_{n-1}, with beta_0 the total weight.
struct JacobiRecurrence {
  double a, b;

  double alpha(int n) const {
    const double s = 2 * n + a + b;
    if (n == 0) return (b - a) / (a + b + 2);
    return (b * b - a * a) / (s * (s + 2));
  }
  double beta(int n) const {
    if (n == 0)
      return std::exp((a + b + 1) * std::numbers::ln2 + std::lgamma(a + 1) + std::lgamma(b + 1) -
                      std::lgamma(a + b + 2));
    if (n == 1) return 4 * (1 + a) * (1 + b) / ((2 + a + b) * (2 + a + b) * (3 + a + b));
    const double s = 2 * n + a + b;
    return 4 * n * (n + a) * (n + b) * (n + a + b) / (s * s * (s + 1) * (s - 1));
  }
};

/// Orthonormal Jacobi polynomials p_0..p_{out.size()-1} at x with respect to
/// (1-x)^a (1+x)^b dx on [-1,1], all multiplied by exp(log_scale).
inline void jacobi_orthonormal_column(double a, double b, double x, std::span<double> out,
                                      double log_scale = 0) {
  if (out.empty()) return;
  const JacobiRecurrence rec{a, b};
  const double log_beta0 = (a + b + 1) * std::numbers::ln2 + std::lgamma(a + 1) + std::lgamma(b + 1) -
                           std::lgamma(a + b + 2);
  double prev = 0, cur = std::exp(log_scale - 0.5 * log_beta0);
  out[0] = cur;
  double sb_prev = 0;
  for (size_t n = 0; n + 1 < out.size(); ++n) {
    const double sb_next = std::sqrt(rec.beta(int(n) + 1));
    const double next = ((x - rec.alpha(int(n))) * cur - sb_prev * prev) / sb_next;
    prev = cur;
    cur = next;
    sb_prev = sb_next;
    out[n + 1] = cur;
  }
}

/// Normalised associated Legendre functions Pbar_n^m(x) for n = m..m+out.size()-1,
/// scaled so that Pbar_n^m(cos t) e^{i m phi} is L^2-normalised on the unit sphere
/// (Condon-Shortley phase, m >= 0). The sectoral start is accumulated in m so that
/// high orders underflow gracefully instead of overflowing.
inline void legendre_normalised_column(int m, double x, std::span<double> out) {
  if (out.empty()) return;
  using std::numbers::pi;
  const double s = std::sqrt(std::max(0.0, (1 - x) * (1 + x)));
  double pmm = 1 / std::sqrt(4 * pi);
  for (int k = 1; k <= m; ++k) pmm *= -std::sqrt((2.0 * k + 1) / (2.0 * k)) * s;
  out[0] = pmm;
  if (out.size() == 1) return;
  double p0 = pmm, p1 = std::sqrt(2.0 * m + 3) * x * pmm;
  out[1] = p1;
  for (size_t i = 2; i < out.size(); ++i) {
    const double n = double(m) + double(i);
    const double an = std::sqrt((4 * n * n - 1) / (n * n - double(m) * m));
    const double bn = std::sqrt(((n - 1) * (n - 1) - double(m) * m) / (4 * (n - 1) * (n - 1) - 1));
    const double p2 = an * (x * p1 - bn * p0);
    p0 = p1;
    p1 = p2;
    out[i] = p1;
  }
}

}  // namespace sphlab
