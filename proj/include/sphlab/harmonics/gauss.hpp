#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "sphlab/core/error.hpp"
#include "sphlab/harmonics/special.hpp"

namespace sphlab {

/// Nodes and weights of an n-point Gauss rule on [-1,1].
struct GaussRule {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive

  int size() const { return int(nodes.size()); }
  int exactness() const { return 2 * size() - 1; }

  template <typename F>
  double integrate(F&& f) const {
    double s = 0;
    for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// Gauss-Legendre rule by Newton iteration on P_n.
inline GaussRule gauss_rule(int n) {
  require(n >= 1, ErrorKind::parameter, "gauss_rule: n must be >= 1");
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  // P_n and P_n' at x
  auto legendre = [n](double x) {
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1)};
  };
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2 / ((1 - x * x) * dp * dp);
    r.nodes[n - 1 - i] = x;
    r.nodes[i] = -x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0;
  return r;
}

/// Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b by Golub-Welsch.
inline GaussRule gauss_jacobi_rule(int n, double a, double b) {
  require(n >= 1, ErrorKind::parameter, "gauss_jacobi_rule: n must be >= 1");
  require(a > -1 && b > -1, ErrorKind::parameter, "gauss_jacobi_rule: a, b must exceed -1");
  const JacobiRecurrence rec{a, b};
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) diag[k] = rec.alpha(k);
  for (int k = 0; k + 1 < n; ++k) sub[k] = std::sqrt(rec.beta(k + 1));
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  if (n == 1) {
    r.nodes[0] = diag[0];
    r.weights[0] = rec.beta(0);
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  for (int k = 0; k < n; ++k) {
    r.nodes[k] = es.eigenvalues()[k];
    const double v0 = es.eigenvectors()(0, k);
    r.weights[k] = rec.beta(0) * v0 * v0;
  }
  return r;
}

/// Gauss rule for the weight sqrt(1-x^2) (second-kind Chebyshev).
inline GaussRule gauss_chebyshev_u_rule(int n) {
  require(n >= 1, ErrorKind::parameter, "gauss_chebyshev_u_rule: n must be >= 1");
  using std::numbers::pi;
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int j = 1; j <= n; ++j) {
    const double t = j * pi / (n + 1);
    const double s = std::sin(t);
    r.nodes[n - j] = std::cos(t);
    r.weights[n - j] = pi / (n + 1) * s * s;
  }
  return r;
}

}  // namespace sphlab
