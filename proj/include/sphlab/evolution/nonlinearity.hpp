#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "sphlab/core/error.hpp"

namespace sphlab {

enum class PowerKind { linear, pure, smooth };

/// F(z) = h(|z|^2) z with h(s) = s^{(alpha-1)/2} (pure) or (1+s)^{(alpha-1)/2} (smooth);
/// V is the potential with F = dV/d(conj z).
struct NonlinearitySpec {
  PowerKind kind = PowerKind::linear;
  double alpha = 1;

  static NonlinearitySpec none() { return {}; }
  static NonlinearitySpec pure(double alpha) { return {PowerKind::pure, check(alpha)}; }
  static NonlinearitySpec smooth(double alpha) { return {PowerKind::smooth, check(alpha)}; }

  double h(double s) const {
    switch (kind) {
      case PowerKind::linear: return 0;
      case PowerKind::pure: return alpha == 3 ? s : std::pow(s, 0.5 * (alpha - 1));
      case PowerKind::smooth: return std::pow(1 + s, 0.5 * (alpha - 1));
    }
    return 0;
  }

  std::complex<double> F(std::complex<double> z) const { return h(std::norm(z)) * z; }

  double V(std::complex<double> z) const {
    const double s = std::norm(z), c = 2 / (alpha + 1);
    switch (kind) {
      case PowerKind::linear: return 0;
      case PowerKind::pure: return c * std::pow(s, 0.5 * (alpha + 1));
      case PowerKind::smooth: return c * (std::pow(1 + s, 0.5 * (alpha + 1)) - 1);
    }
    return 0;
  }

  /// |z|^{alpha-1} z is a polynomial in (z, conj z) for odd integer alpha.
  bool polynomial() const {
    return kind == PowerKind::linear || (kind == PowerKind::pure && alpha == std::floor(alpha) && int(alpha) % 2 == 1);
  }

  /// Grid exactness for a degree-D field: (alpha+1) D when polynomial, else 4 D
  /// (twice the exactness needed for quadratic quantities).
  int dealiased_exactness(int D) const {
    if (kind == PowerKind::linear) return 2 * D;
    return polynomial() ? int(alpha + 1) * D : 4 * D;
  }

  std::string str() const {
    switch (kind) {
      case PowerKind::linear: return "linear";
      case PowerKind::pure: return "pure(" + std::to_string(alpha) + ")";
      case PowerKind::smooth: return "smooth(" + std::to_string(alpha) + ")";
    }
    return "?";
  }

 private:
  static double check(double a) {
    require(a > 1 && std::isfinite(a), ErrorKind::parameter, "nonlinearity: alpha must be > 1");
    return a;
  }
};

inline const char* to_string(PowerKind k) {
  switch (k) {
    case PowerKind::linear: return "linear";
    case PowerKind::pure: return "pure";
    case PowerKind::smooth: return "smooth";
  }
  return "?";
}

}  // namespace sphlab
