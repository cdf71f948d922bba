#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include <fmt/format.h>

#include "sphlab/core/parallel.hpp"
#include "sphlab/estimates/fit.hpp"
#include "sphlab/lattice/counting.hpp"

namespace sphlab {

struct CountPoint {
  i64 N = 0;
  i64 max_count = 0;
  std::vector<i64> argmax;  // maximising parameters, named by CountReport::argmax_names
  double normalized = 0;    // max_count / scale, scale = 1 unless the counter says otherwise
  i64 guard_hits = 0;
};

struct CountReport {
  std::string counter;
  std::vector<std::string> argmax_names;
  std::vector<CountPoint> points;
  std::optional<ExponentFit> growth;  // max_count against N
  i64 overall_max = 0;
  double max_normalized = 0;
  i64 guard_hits = 0;
  std::string tie_convention = "closed";  // |l - sum| <= 1/2 includes ties
};

using Counter = std::function<CountPoint(i64 N)>;

inline CountReport count_sweep(const std::string& name, std::vector<std::string> argmax_names, const Counter& counter,
                               const std::vector<i64>& schedule, int workers = 1) {
  for (size_t i = 1; i < schedule.size(); ++i)
    require(schedule[i] > schedule[i - 1], ErrorKind::parameter, "count_sweep: schedule must be increasing");
  CountReport r;
  r.counter = name;
  r.argmax_names = std::move(argmax_names);
  r.points = parallel_map(schedule.size(), workers, [&](size_t i) { return counter(schedule[i]); });
  std::vector<std::pair<double, double>> s;
  for (const auto& p : r.points) {
    r.overall_max = std::max(r.overall_max, p.max_count);
    r.max_normalized = std::max(r.max_normalized, p.normalized);
    r.guard_hits += p.guard_hits;
    if (p.max_count > 0) s.emplace_back(double(p.N), double(p.max_count));
  }
  if (s.size() >= 3) r.growth = exponent_fit(s);
  return r;
}

/// max over 0 <= tau <= tau_max of gauss_rep_count(tau, N), smallest maximiser.
inline CountPoint gauss_rep_max(i64 N, i64 tau_max) {
  require(tau_max >= 0, ErrorKind::parameter, "gauss_rep_max: tau_max must be >= 0");
  std::vector<std::uint32_t> h(size_t(tau_max) + 1, 0);
  for (i64 k1 = N; k1 < 2 * N && k1 * k1 <= tau_max; ++k1)
    for (i64 k2 = 0; k1 * k1 + k2 * k2 <= tau_max; ++k2) ++h[size_t(k1 * k1 + k2 * k2)];
  const auto it = std::max_element(h.begin(), h.end());
  CountPoint p;
  p.N = N;
  p.max_count = *it;
  p.argmax = {i64(it - h.begin())};
  p.normalized = double(p.max_count);
  return p;
}

/// sup over tau of alpha_count(N1, N2, tau), smallest maximiser.
inline CountPoint alpha_sup(i64 N1, i64 N2) {
  detail::require_dyadic(N1, "alpha_sup");
  detail::require_dyadic(N2, "alpha_sup");
  std::vector<i64> b1, b2;
  for (i64 k = 1; k <= 2 * std::max(N1, N2) + 1; ++k) {
    if (s3_in_band(k, N1)) b1.push_back(k);
    if (s3_in_band(k, N2)) b2.push_back(k);
  }
  std::unordered_map<i64, i64> h;
  for (i64 a : b1)
    for (i64 b : b2) ++h[a * a + b * b - 2];
  CountPoint p;
  p.N = std::max(N1, N2);
  for (const auto& [tau, c] : h)
    if (c > p.max_count || (c == p.max_count && !p.argmax.empty() && tau < p.argmax[0])) {
      p.max_count = c;
      p.argmax = {tau};
    }
  p.normalized = double(p.max_count);
  return p;
}

/// max over (l, xi) of |Lambda(l, xi)| by enumerating band triples and binning by (l, xi).
/// normalized = max / (N3^2 N2).
inline CountPoint lambda_max(const Kappa& kappa, i64 N1, i64 N2, i64 N3) {
  for (i64 N : {N1, N2, N3}) detail::require_dyadic(N, "lambda_max");
  require(N1 >= N2 && N2 >= N3, ErrorKind::parameter, "lambda_max: need N1 >= N2 >= N3");
  const ProductSpectrum sp(kappa);
  struct Mode {
    i64 m, n;
    long double lambda;
    bool guard;
  };
  auto band = [&](i64 N) {
    std::vector<Mode> out;
    for (i64 m = 0; m < 2 * N; ++m)
      for (i64 n = 0; n <= sp.n_limit(N); ++n)
        if (const int b = sp.band(m, n, N); b >= 0)
          out.push_back({m, n, (long double)m * m + (long double)kappa.value * (n * n + n), b == 0});
    return out;
  };
  const auto B1 = band(N1), B2 = band(N2), B3 = band(N3);
  const i64 xi_span = 2 * N1 + 2 * N2 + 2 * N3;
  std::unordered_map<i64, i64> h;
  i64 guard = 0;
  for (const auto& a : B1)
    for (const auto& b : B2)
      for (const auto& c : B3) {
        const long double s = a.lambda + b.lambda + c.lambda;
        const i64 xi = a.m + b.m + c.m, m[3] = {a.m, b.m, c.m}, n[3] = {a.n, b.n, c.n};
        for (i64 l = i64(std::floor(s - 0.5L)) - 1; l <= i64(std::ceil(s + 0.5L)) + 1; ++l) {
          const int r = sp.resonant(l, m, n);
          if (r < 0) continue;
          if (r == 0 || a.guard || b.guard || c.guard)
            ++guard;
          else
            ++h[l * xi_span + xi];
        }
      }
  CountPoint p;
  p.N = N1;
  p.guard_hits = guard;
  i64 best = -1;
  for (const auto& [key, c] : h)
    if (c > p.max_count || (c == p.max_count && key < best)) p.max_count = c, best = key;
  if (best >= 0) p.argmax = {best / xi_span, best % xi_span};
  p.normalized = double(p.max_count) / double(N3 * N3 * N2);
  return p;
}

/// CSV: N, max_count, normalized, guard_hits, then the argmax parameters.
inline void write_csv(std::ostream& os, const CountReport& r) {
  os << "N,max_count,normalized,guard_hits";
  for (const auto& n : r.argmax_names) os << ",argmax_" << n;
  os << "\n";
  for (const auto& p : r.points) {
    os << fmt::format("{},{},{:.17g},{}", p.N, p.max_count, p.normalized, p.guard_hits);
    for (size_t i = 0; i < r.argmax_names.size(); ++i) os << "," << (i < p.argmax.size() ? std::to_string(p.argmax[i]) : "");
    os << "\n";
  }
}

}  // namespace sphlab
