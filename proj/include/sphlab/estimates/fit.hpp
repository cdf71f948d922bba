#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "sphlab/core/error.hpp"

namespace sphlab {

/// Ordinary least squares of log y against log x.
struct ExponentFit {
  std::vector<std::pair<double, double>> samples;  // all samples, including discarded ones
  size_t first_used = 0;                           // samples[first_used..] entered the fit
  double slope = 0;
  double intercept = 0;
  double residual_rms = 0;
  double x_min = 0, x_max = 0;  // range used

  double predict(double x) const { return std::exp(intercept) * std::pow(x, slope); }
};

inline ExponentFit exponent_fit(std::vector<std::pair<double, double>> samples, size_t discard = 0) {
  require(samples.size() >= discard + 3, ErrorKind::parameter, "exponent_fit: need at least 3 samples in the fit");
  for (const auto& [x, y] : samples)
    require(x > 0 && y > 0 && std::isfinite(x) && std::isfinite(y), ErrorKind::domain,
            "exponent_fit: samples must be positive and finite");
  ExponentFit f;
  f.samples = std::move(samples);
  f.first_used = discard;
  const size_t n = f.samples.size() - discard;
  double mx = 0, my = 0;
  for (size_t i = discard; i < f.samples.size(); ++i) {
    mx += std::log(f.samples[i].first);
    my += std::log(f.samples[i].second);
  }
  mx /= n, my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = discard; i < f.samples.size(); ++i) {
    const double dx = std::log(f.samples[i].first) - mx, dy = std::log(f.samples[i].second) - my;
    sxx += dx * dx, sxy += dx * dy;
  }
  require(sxx > 0, ErrorKind::degenerate, "exponent_fit: x values must not all coincide");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0;
  f.x_min = INFINITY, f.x_max = -INFINITY;
  for (size_t i = discard; i < f.samples.size(); ++i) {
    const auto [x, y] = f.samples[i];
    const double r = std::log(y) - f.intercept - f.slope * std::log(x);
    rss += r * r;
    f.x_min = std::min(f.x_min, x), f.x_max = std::max(f.x_max, x);
  }
  f.residual_rms = std::sqrt(rss / n);
  return f;
}

/// Lambda(2,v) = v^{1/4}, Lambda(3,v) = v^{1/2} log^{1/2} v, Lambda(d,v) = v^{(d-2)/2} for d >= 4.
inline double lambda_growth(int d, double nu) {
  require(d >= 2, ErrorKind::parameter, "lambda_growth: d must be >= 2");
  require(nu >= 1, ErrorKind::domain, "lambda_growth: nu must be >= 1");
  if (d == 2) return std::pow(nu, 0.25);
  if (d == 3) return std::sqrt(nu * std::log(nu));
  return std::pow(nu, 0.5 * (d - 2));
}

}  // namespace sphlab
