#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sphlab/core/error.hpp"

namespace sphlab {

using i64 = std::int64_t;
using i128 = __int128;

namespace detail {

inline i64 isqrt(i64 v) {
  if (v <= 0) return 0;
  i64 r = i64(std::sqrt(double(v)));
  while (i128(r) * r > v) --r;
  while (i128(r + 1) * (r + 1) <= v) ++r;
  return r;
}

inline bool is_square(i64 v, i64& root) {
  if (v < 0) return false;
  root = isqrt(v);
  return root * root == v;
}

inline void require_dyadic(i64 N, const char* who) {
  require(N >= 1 && (N & (N - 1)) == 0, ErrorKind::parameter, std::string(who) + ": N must be a power of two >= 1");
}

/// N^4 <= 1 + L^2 < 16 N^4 for an integer eigenvalue L.
inline bool int_band(i64 L, i64 N) {
  const i128 n4 = i128(N) * N * N * N, q = 1 + i128(L) * L;
  return n4 <= q && q < 16 * n4;
}

}  // namespace detail

/// #{(k1, k2) : N <= k1 < 2N, k2 >= 0, k1^2 + k2^2 = tau}
inline i64 gauss_rep_count(i64 tau, i64 N) {
  require(N >= 1, ErrorKind::parameter, "gauss_rep_count: N must be positive");
  i64 count = 0, r = 0;
  for (i64 k1 = N; k1 < 2 * N; ++k1) {
    const i128 rest = i128(tau) - i128(k1) * k1;
    if (rest < 0) break;
    if (detail::is_square(i64(rest), r)) ++count;
  }
  return count;
}

/// S^3 eigenvalue lambda_k = k^2 - 1 lies in the dyadic band of N.
inline bool s3_in_band(i64 k, i64 N) { return k >= 1 && detail::int_band(k * k - 1, N); }

/// #{(k1, k2) : k_j >= 1, k1^2 + k2^2 = tau + 2, k_j in band N_j}
inline i64 alpha_count(i64 N1, i64 N2, i64 tau) {
  detail::require_dyadic(N1, "alpha_count");
  detail::require_dyadic(N2, "alpha_count");
  const i64 target = tau + 2;
  i64 count = 0, k2 = 0;
  // band N requires k^2 - 1 < 4 N^2
  for (i64 k1 = 1; k1 <= 2 * N1 && i128(k1) * k1 < target; ++k1) {
    if (!s3_in_band(k1, N1)) continue;
    if (detail::is_square(target - k1 * k1, k2) && s3_in_band(k2, N2)) ++count;
  }
  return count;
}

/// kappa either as an exact fraction num/den or as a real number.
struct Kappa {
  double value = 1;
  std::optional<std::pair<i64, i64>> fraction;

  static Kappa rational(i64 num, i64 den) {
    require(num > 0 && den > 0, ErrorKind::parameter, "kappa must be positive");
    const i64 g = std::gcd(num, den);
    return {double(num) / double(den), std::pair{num / g, den / g}};
  }
  static Kappa real(double v) {
    require(v > 0 && std::isfinite(v), ErrorKind::parameter, "kappa must be positive");
    return {v, std::nullopt};
  }
  bool exact() const { return fraction.has_value(); }
  std::string str() const {
    return exact() ? std::to_string(fraction->first) + "/" + std::to_string(fraction->second) : std::to_string(value);
  }
};

/// Comparisons with real kappa closer than this to a boundary are reported, not counted.
inline constexpr double kGuardBand = 1e-9;

struct ExactCount {
  i64 count = 0;
  i64 guard_hits = 0;
};

/// Tests on lambda_{m,n} = m^2 + kappa (n^2 + n) for S^2 x S^1.
class ProductSpectrum {
 public:
  explicit ProductSpectrum(Kappa k) : k_(k) {}

  const Kappa& kappa() const { return k_; }

  /// +1 inside, 0 on the guard band (real kappa only), -1 outside.
  int band(i64 m, i64 n, i64 N) const {
    if (k_.exact()) {
      const auto [a, b] = *k_.fraction;
      const i128 L = i128(b) * m * m + i128(a) * (n * n + n);
      const i128 n4 = i128(N) * N * N * N * b * b, q = i128(b) * b + L * L;
      return n4 <= q && q < 16 * n4 ? 1 : -1;
    }
    const long double l = (long double)m * m + (long double)k_.value * (n * n + n);
    const long double q = 1 + l * l, lo = (long double)N * N * N * N, hi = 16 * lo;
    if (std::fabs(q - lo) <= kGuardBand * lo || std::fabs(q - hi) <= kGuardBand * hi) return 0;
    return lo <= q && q < hi ? 1 : -1;
  }

  /// |l - sum_j lambda_{m_j, n_j}| <= 1/2, closed at ties for rational kappa.
  int resonant(i64 l, const i64 (&m)[3], const i64 (&n)[3]) const {
    if (k_.exact()) {
      const auto [a, b] = *k_.fraction;
      i128 s = 0;
      for (int j = 0; j < 3; ++j) s += i128(b) * m[j] * m[j] + i128(a) * (n[j] * n[j] + n[j]);
      const i128 d = 2 * (i128(b) * l - s);
      return (d < 0 ? -d : d) <= b ? 1 : -1;
    }
    long double ms = 0, ns = 0;
    for (int j = 0; j < 3; ++j) ms += (long double)m[j] * m[j], ns += (long double)n[j] * n[j] + n[j];
    const long double d = std::fabs(l - ms - (long double)k_.value * ns) - 0.5L;
    if (std::fabs(d) <= kGuardBand) return 0;
    return d < 0 ? 1 : -1;
  }

  /// Largest n with kappa (n^2 + n) < 4 N^2, a necessary condition for band N.
  i64 n_limit(i64 N) const {
    i64 n = i64(std::sqrt(4.0 * N * N / k_.value)) + 2;
    while (n > 0 && (long double)k_.value * (n * n + n) >= 4.0L * N * N * (1 + kGuardBand)) --n;
    return n;
  }

 private:
  Kappa k_;
};

/// |Lambda(l, xi)|: sextuples (m_j, n_j) in N^6 with |l - sum lambda_{m_j,n_j}| <= 1/2,
/// m1 + m2 + m3 = xi and (m_j, n_j) in band N_j. (m1, n1, n2) are found from the
/// reduced inequality |(2n1+1)^2 + (2n2+1)^2 - R| <= 2/kappa, then checked exactly.
inline ExactCount lambda_count(const Kappa& kappa, i64 l, i64 xi, i64 N1, i64 N2, i64 N3) {
  for (i64 N : {N1, N2, N3}) detail::require_dyadic(N, "lambda_count");
  require(N1 >= N2 && N2 >= N3, ErrorKind::parameter, "lambda_count: need N1 >= N2 >= N3");
  const ProductSpectrum sp(kappa);
  ExactCount out;
  if (xi < 0) return out;
  const double kv = kappa.value;
  const i64 n1max = sp.n_limit(N1), n2max = sp.n_limit(N2), n3max = sp.n_limit(N3);
  for (i64 m3 = 0; m3 < 2 * N3 && m3 <= xi; ++m3)
    for (i64 n3 = 0; n3 <= n3max; ++n3) {
      const int b3 = sp.band(m3, n3, N3);
      if (b3 < 0) continue;
      for (i64 m2 = 0; m2 < 2 * N2 && m2 + m3 <= xi; ++m2) {
        const i64 m1 = xi - m2 - m3;
        if (m1 >= 2 * N1) continue;
        const long double R = -4.0L * (n3 * n3 + n3) + 2 +
                              4.0L / kv * ((long double)l - (long double)m1 * m1 - (long double)m2 * m2 - (long double)m3 * m3);
        const long double w = 2.0L / kv + 1;
        for (i64 n1 = 0; n1 <= n1max; ++n1) {
          const long double t = R - (long double)(2 * n1 + 1) * (2 * n1 + 1);
          if (t + w < 1) break;
          const i64 lo = std::max<i64>(0, (i64(std::sqrt(double(std::max<long double>(0, t - w)))) - 1) / 2 - 1);
          const i64 hi = std::min<i64>(n2max, i64(std::sqrt(double(t + w))) / 2 + 1);
          for (i64 n2 = lo; n2 <= hi; ++n2) {
            const i64 m[3] = {m1, m2, m3}, n[3] = {n1, n2, n3};
            const int r = sp.resonant(l, m, n);
            if (r < 0) continue;
            const int b1 = sp.band(m1, n1, N1), b2 = sp.band(m2, n2, N2);
            if (b1 < 0 || b2 < 0) continue;
            if (r == 0 || b1 == 0 || b2 == 0 || b3 == 0)
              ++out.guard_hits;
            else
              ++out.count;
          }
        }
      }
    }
  return out;
}

}  // namespace sphlab
