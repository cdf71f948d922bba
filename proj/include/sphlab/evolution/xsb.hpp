#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <vector>

#include "sphlab/core/error.hpp"
#include "sphlab/evolution/trajectory.hpp"
#include "sphlab/spectral/norms.hpp"

namespace sphlab {

/// Time window psi on the periodised interval [-period/2, period/2) sampled at `samples` points.
struct WindowSpec {
  std::function<double(double)> psi;
  double period = 8;
  int samples = 4096;

  /// 1 on [-1, 1], 0 outside [-2, 2], smooth transition.
  static WindowSpec plateau(int samples = 4096) {
    auto f = [](double x) { return x > 0 ? std::exp(-1 / x) : 0.0; };
    auto step = [f](double x) { return f(x) / (f(x) + f(1 - x)); };
    return {[step](double t) { return step(2 - std::abs(t)); }, 8, samples};
  }

  /// exp(1 - 1/(1 - (t/r)^2)) on |t| < r.
  static WindowSpec bump(double radius = 2, int samples = 4096) {
    return {[radius](double t) {
              const double y = t / radius;
              return std::abs(y) < 1 ? std::exp(1 - 1 / (1 - y * y)) : 0.0;
            },
            8, samples};
  }

  double dt() const { return period / samples; }
  double time(int n) const { return -0.5 * period + n * dt(); }

  /// (1/2pi) int <tau>^{2b} |psi^(tau)|^2 d tau, discretised like xsb_norm.
  double hb_norm(double b) const;
};

namespace detail {

/// Forward DFT of a length-M series: out_j = dt sum_n e^{-2 pi i j n / M} in_n.
class TimeFft {
 public:
  explicit TimeFft(int M) : M_(M) {
    in_ = fftw_alloc_complex(M);
    out_ = fftw_alloc_complex(M);
    fwd_ = fftw_plan_dft_1d(M, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(M, out_, in_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~TimeFft() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(in_);
    fftw_free(out_);
  }
  TimeFft(const TimeFft&) = delete;
  TimeFft& operator=(const TimeFft&) = delete;

  std::vector<cplx> forward(const std::vector<cplx>& x, double dt) {
    for (int n = 0; n < M_; ++n) in_[n][0] = x[n].real(), in_[n][1] = x[n].imag();
    fftw_execute(fwd_);
    std::vector<cplx> y(M_);
    for (int j = 0; j < M_; ++j) y[j] = dt * cplx(out_[j][0], out_[j][1]);
    return y;
  }

  std::vector<cplx> inverse(const std::vector<cplx>& y, double dt) {
    for (int j = 0; j < M_; ++j) out_[j][0] = y[j].real(), out_[j][1] = y[j].imag();
    fftw_execute(bwd_);
    std::vector<cplx> x(M_);
    for (int n = 0; n < M_; ++n) x[n] = cplx(in_[n][0], in_[n][1]) / (dt * M_);
    return x;
  }

 private:
  int M_;
  fftw_complex *in_, *out_;
  fftw_plan fwd_, bwd_;
};

/// Angular frequency of FFT bin j for M samples over a period L.
inline double bin_frequency(int j, int M, double L) { return 2 * std::numbers::pi * (j <= M / 2 ? j : j - M) / L; }

/// Share of the spectral energy in bins above 7/8 of the Nyquist frequency.
inline double nyquist_share(const std::vector<cplx>& y) {
  const int M = int(y.size());
  double hi = 0, all = 0;
  for (int j = 0; j < M; ++j) {
    const int k = j <= M / 2 ? j : M - j;
    all += std::norm(y[j]);
    if (8 * k >= 7 * (M / 2)) hi += std::norm(y[j]);
  }
  return all > 0 ? hi / all : 0;
}

inline constexpr double kAliasThreshold = 1e-12;

inline void check_xsb_trajectory(const Trajectory& u) {
  require(u.size() >= 16, ErrorKind::parameter, "xsb: need at least 16 time samples");
  require(u.uniform(), ErrorKind::parameter, "xsb: time grid must be uniform");
}

}  // namespace detail

inline double WindowSpec::hb_norm(double b) const {
  detail::TimeFft fft(samples);
  std::vector<cplx> x(samples);
  for (int n = 0; n < samples; ++n) x[n] = psi(time(n));
  const auto y = fft.forward(x, dt());
  double acc = 0;
  for (int j = 0; j < samples; ++j)
    acc += std::pow(japanese(detail::bin_frequency(j, samples, period)), 2 * b) * std::norm(y[j]);
  return std::sqrt(acc / period);
}

/// psi(t) e^{it Delta} u0 sampled on the window grid.
inline Trajectory windowed_free_trajectory(const SpectralField& u0, const WindowSpec& w) {
  std::vector<SpectralIndex> basis;
  for (const auto& [i, c] : u0.coefficients()) basis.push_back(i);
  Trajectory tr(u0.manifold(), basis);
  tr.dt = w.dt();
  tr.scheme = "exact";
  const auto c0 = u0.dense(tr.basis);
  std::vector<double> lam;
  for (const auto& i : tr.basis) lam.push_back(eigenvalue(u0.manifold(), i));
  for (int n = 0; n < w.samples; ++n) {
    const double t = w.time(n), p = w.psi(t);
    std::vector<cplx> row(c0.size());
    for (size_t k = 0; k < row.size(); ++k) row[k] = p * c0[k] * std::polar(1.0, -lam[k] * t);
    tr.push(t, std::move(row));
  }
  return tr;
}

/// (sum_k <lambda_k>^s (1/L) sum_j <tau_j + lambda_k>^{2b} |u_k^(tau_j)|^2)^{1/2}, the
/// trajectory read as one period of length L = samples * dt.
inline double xsb_norm(const Trajectory& u, double s, double b) {
  detail::check_xsb_trajectory(u);
  const int M = int(u.size());
  const double dt = (u.times.back() - u.times.front()) / (M - 1), L = M * dt;
  detail::TimeFft fft(M);
  std::vector<cplx> x(M);
  double acc = 0;
  for (size_t k = 0; k < u.basis.size(); ++k) {
    for (int n = 0; n < M; ++n) x[n] = u.data[n][k];
    const auto y = fft.forward(x, dt);
    require(detail::nyquist_share(y) <= detail::kAliasThreshold, ErrorKind::precision,
            "xsb_norm: time grid does not resolve the spectrum (energy near Nyquist)");
    const double lam = eigenvalue(u.manifold, u.basis[k]);
    double row = 0;
    for (int j = 0; j < M; ++j) row += std::pow(japanese(detail::bin_frequency(j, M, L) + lam), 2 * b) * std::norm(y[j]);
    acc += std::pow(japanese(lam), s) * row / L;
  }
  return std::sqrt(acc);
}

/// Delta_{NL}: keep indices with lambda_k in the band of N and time frequencies with
/// L <= <tau + lambda_k> <= 2L.
inline Trajectory time_freq_project(const Trajectory& u, double N, double Lband) {
  detail::check_xsb_trajectory(u);
  require(is_dyadic(N) && is_dyadic(Lband), ErrorKind::parameter, "time_freq_project: N and L must be powers of two");
  const int M = int(u.size());
  const double dt = (u.times.back() - u.times.front()) / (M - 1), period = M * dt;
  Trajectory out = u;
  detail::TimeFft fft(M);
  std::vector<cplx> x(M);
  for (size_t k = 0; k < u.basis.size(); ++k) {
    const double lam = eigenvalue(u.manifold, u.basis[k]);
    if (!in_dyadic_band(lam, N)) {
      for (int n = 0; n < M; ++n) out.data[n][k] = 0;
      continue;
    }
    for (int n = 0; n < M; ++n) x[n] = u.data[n][k];
    auto y = fft.forward(x, dt);
    require(detail::nyquist_share(y) <= detail::kAliasThreshold, ErrorKind::precision,
            "time_freq_project: time grid does not resolve the spectrum (energy near Nyquist)");
    for (int j = 0; j < M; ++j) {
      const double w = japanese(detail::bin_frequency(j, M, period) + lam);
      if (w < Lband || w > 2 * Lband) y[j] = 0;
    }
    const auto back = fft.inverse(y, dt);
    for (int n = 0; n < M; ++n) out.data[n][k] = back[n];
  }
  return out;
}

/// sup_t ||u(t)||_{L^2}
inline double sup_time_l2(const Trajectory& u) {
  double m = 0;
  for (const auto& row : u.data) {
    double s = 0;
    for (const auto& z : row) s += std::norm(z);
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

/// sup_t ||u(t)||_{H^s} with weights <lambda_k>^s
inline double sup_time_hs(const Trajectory& u, double s) {
  std::vector<double> w;
  for (const auto& i : u.basis) w.push_back(std::pow(japanese(eigenvalue(u.manifold, i)), s));
  double m = 0;
  for (const auto& row : u.data) {
    double acc = 0;
    for (size_t k = 0; k < row.size(); ++k) acc += w[k] * std::norm(row[k]);
    m = std::max(m, std::sqrt(acc));
  }
  return m;
}

/// ||u||_{L^2_t L^2_x} over one period by the rectangle rule.
inline double l2_time_l2(const Trajectory& u) {
  require(u.size() >= 2, ErrorKind::parameter, "l2_time_l2: need at least 2 samples");
  const double dt = (u.times.back() - u.times.front()) / double(u.size() - 1);
  double acc = 0;
  for (const auto& row : u.data)
    for (const auto& z : row) acc += dt * std::norm(z);
  return std::sqrt(acc);
}

}  // namespace sphlab
