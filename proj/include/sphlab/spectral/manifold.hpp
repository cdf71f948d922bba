#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "sphlab/core/error.hpp"

namespace sphlab {

/// Which manifold a field lives on.
///
///   s2     round sphere of radius rho
///   s3     unit three-sphere, harmonics in Hopf coordinates
///   s2xs1  S^2_rho x S^1 with the product metric
///   zonal  the sector of functions on S^d depending only on the polar angle
enum class ManifoldKind { s2, s3, s2xs1, zonal };

struct ManifoldSpec {
  ManifoldKind kind = ManifoldKind::s3;
  double rho = 1.0;
  int dim = 3;  // sphere dimension; only meaningful for the zonal sector

  static ManifoldSpec sphere2(double rho = 1.0) { return {ManifoldKind::s2, check_rho(rho), 2}; }
  static ManifoldSpec sphere3() { return {ManifoldKind::s3, 1.0, 3}; }
  static ManifoldSpec product(double rho = 1.0) { return {ManifoldKind::s2xs1, check_rho(rho), 3}; }
  static ManifoldSpec zonal(int d) {
    require(d >= 2 && d <= 4, ErrorKind::parameter, "zonal sector supports d in {2,3,4}");
    return {ManifoldKind::zonal, 1.0, d};
  }

  double kappa() const { return 1.0 / (rho * rho); }

  /// Riemannian volume of the full manifold (surface measure, not normalised).
  double volume() const {
    using std::numbers::pi;
    switch (kind) {
      case ManifoldKind::s2: return 4 * pi * rho * rho;
      case ManifoldKind::s3: return 2 * pi * pi;
      case ManifoldKind::s2xs1: return 8 * pi * pi * rho * rho;
      case ManifoldKind::zonal: return sphere_volume(dim);
    }
    return 0;
  }

  /// True when every eigenvalue is an integer, so e^{it Delta} is 2pi-periodic.
  bool integer_spectrum() const {
    return kind == ManifoldKind::s3 || (kind == ManifoldKind::zonal) ||
           (kind == ManifoldKind::s2 && rho == 1.0);
  }

  std::string name() const {
    switch (kind) {
      case ManifoldKind::s2: return "S2";
      case ManifoldKind::s3: return "S3";
      case ManifoldKind::s2xs1: return "S2xS1";
      case ManifoldKind::zonal: return "zonal-S" + std::to_string(dim);
    }
    return "?";
  }

  static double sphere_volume(int d) {
    using std::numbers::pi;
    switch (d) {
      case 1: return 2 * pi;
      case 2: return 4 * pi;
      case 3: return 2 * pi * pi;
      case 4: return 8 * pi * pi / 3;
      default: fail(ErrorKind::parameter, "sphere_volume: d out of range");
    }
  }

  bool operator==(const ManifoldSpec&) const = default;

 private:
  static double check_rho(double rho) {
    require(rho > 0 && std::isfinite(rho), ErrorKind::parameter, "radius must be positive");
    return rho;
  }
};

/// Basis index of an orthonormal eigenfunction.
///
///   s2     (n, m, 0)        Y_n^m, |m| <= n
///   s3     (p, m1, m2)      Hopf harmonic, |m1|+|m2| <= p, p-|m1|-|m2| even
///   s2xs1  (m, n, j)        e^{i m theta} Y_n^j
///   zonal  (p, 0, 0)        normalised zonal harmonic of degree p
struct SpectralIndex {
  int a = 0;
  int b = 0;
  int c = 0;
  auto operator<=>(const SpectralIndex&) const = default;
};

/// Label of an eigenspace (the spectral projector P_k of the text).
///
///   s2     (n, 0)
///   s3     (k, 0) with k = p + 1 >= 1
///   s2xs1  (|m|, n)
///   zonal  (p, 0)
struct EigenLabel {
  int first = 0;
  int second = 0;
  auto operator<=>(const EigenLabel&) const = default;
};

inline bool is_valid(const ManifoldSpec& mf, const SpectralIndex& i) {
  switch (mf.kind) {
    case ManifoldKind::s2: return i.a >= 0 && std::abs(i.b) <= i.a && i.c == 0;
    case ManifoldKind::s3: {
      const int rest = i.a - std::abs(i.b) - std::abs(i.c);
      return i.a >= 0 && rest >= 0 && rest % 2 == 0;
    }
    case ManifoldKind::s2xs1: return i.b >= 0 && std::abs(i.c) <= i.b;
    case ManifoldKind::zonal: return i.a >= 0 && i.b == 0 && i.c == 0;
  }
  return false;
}

inline void require_valid(const ManifoldSpec& mf, const SpectralIndex& i) {
  if (!is_valid(mf, i))
    fail(ErrorKind::index, mf.name() + ": invalid index (" + std::to_string(i.a) + "," +
                               std::to_string(i.b) + "," + std::to_string(i.c) + ")");
}

/// Polynomial degree of a basis element; for S2xS1 the larger of the two factor degrees.
inline int degree(const ManifoldSpec& mf, const SpectralIndex& i) {
  switch (mf.kind) {
    case ManifoldKind::s2:
    case ManifoldKind::s3:
    case ManifoldKind::zonal: return i.a;
    case ManifoldKind::s2xs1: return std::max(std::abs(i.a), i.b);
  }
  return 0;
}

inline EigenLabel label_of(const ManifoldSpec& mf, const SpectralIndex& i) {
  switch (mf.kind) {
    case ManifoldKind::s2: return {i.a, 0};
    case ManifoldKind::s3: return {i.a + 1, 0};
    case ManifoldKind::s2xs1: return {std::abs(i.a), i.b};
    case ManifoldKind::zonal: return {i.a, 0};
  }
  return {};
}

/// Eigenvalue of -Delta on the eigenspace with the given label.
inline double eigenvalue(const ManifoldSpec& mf, const EigenLabel& l) {
  switch (mf.kind) {
    case ManifoldKind::s2:
      require(l.first >= 0 && l.second == 0, ErrorKind::index, "S2 label is a degree n >= 0");
      return double(l.first) * (l.first + 1) * mf.kappa();
    case ManifoldKind::s3:
      require(l.first >= 1 && l.second == 0, ErrorKind::index, "S3 label is k >= 1");
      return double(l.first) * l.first - 1.0;
    case ManifoldKind::s2xs1:
      require(l.first >= 0 && l.second >= 0, ErrorKind::index, "S2xS1 label is (m,n), m,n >= 0");
      return double(l.first) * l.first + mf.kappa() * (double(l.second) * l.second + l.second);
    case ManifoldKind::zonal:
      require(l.first >= 0 && l.second == 0, ErrorKind::index, "zonal label is a degree p >= 0");
      return double(l.first) * (l.first + mf.dim - 1);
  }
  return 0;
}

inline double eigenvalue(const ManifoldSpec& mf, const SpectralIndex& i) {
  require_valid(mf, i);
  return eigenvalue(mf, label_of(mf, i));
}

/// <x> = (1 + x^2)^{1/2}
inline double japanese(double x) { return std::sqrt(1.0 + x * x); }

/// Every valid basis index of degree <= max_degree, in canonical (sorted) order.
inline std::vector<SpectralIndex> enumerate_basis(const ManifoldSpec& mf, int max_degree) {
  require(max_degree >= 0, ErrorKind::parameter, "max_degree must be >= 0");
  std::vector<SpectralIndex> out;
  const int D = max_degree;
  switch (mf.kind) {
    case ManifoldKind::s2:
      for (int n = 0; n <= D; ++n)
        for (int m = -n; m <= n; ++m) out.push_back({n, m, 0});
      break;
    case ManifoldKind::s3:
      for (int p = 0; p <= D; ++p)
        for (int m1 = -p; m1 <= p; ++m1)
          for (int m2 = -(p - std::abs(m1)); m2 <= p - std::abs(m1); ++m2)
            if ((p - std::abs(m1) - std::abs(m2)) % 2 == 0) out.push_back({p, m1, m2});
      break;
    case ManifoldKind::s2xs1:
      for (int m = -D; m <= D; ++m)
        for (int n = 0; n <= D; ++n)
          for (int j = -n; j <= n; ++j) out.push_back({m, n, j});
      break;
    case ManifoldKind::zonal:
      for (int p = 0; p <= D; ++p) out.push_back({p, 0, 0});
      break;
  }
  return out;
}

/// Basis indices of a single eigenspace of a sphere (degree p).
inline std::vector<SpectralIndex> eigenspace_basis(const ManifoldSpec& mf, int p) {
  require(p >= 0, ErrorKind::parameter, "degree must be >= 0");
  require(mf.kind != ManifoldKind::s2xs1, ErrorKind::parameter,
          "eigenspace_basis: use the EigenLabel overload on S2xS1");
  std::vector<SpectralIndex> out;
  for (const auto& i : enumerate_basis(mf, p))
    if (degree(mf, i) == p) out.push_back(i);
  return out;
}

/// Basis indices spanning the eigenspace with the given label.
inline std::vector<SpectralIndex> eigenspace_basis(const ManifoldSpec& mf, const EigenLabel& l) {
  std::vector<SpectralIndex> out;
  switch (mf.kind) {
    case ManifoldKind::s2:
    case ManifoldKind::zonal: return eigenspace_basis(mf, l.first);
    case ManifoldKind::s3: return eigenspace_basis(mf, l.first - 1);
    case ManifoldKind::s2xs1: {
      const int m = l.first, n = l.second;
      for (int s : {-1, 1}) {
        if (m == 0 && s == 1) continue;
        for (int j = -n; j <= n; ++j) out.push_back({s * m, n, j});
      }
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  return out;
}

}  // namespace sphlab
