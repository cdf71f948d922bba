#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "sphlab/core/error.hpp"
#include "sphlab/spectral/manifold.hpp"

namespace sphlab {

/// Finitely supported expansion sum_i c_i e_i over the orthonormal eigenbasis.
/// Coefficients are kept in canonical index order, so every reduction over
/// them is deterministic.
class SpectralField {
 public:
  using Map = std::map<SpectralIndex, std::complex<double>>;

  SpectralField() = default;
  explicit SpectralField(ManifoldSpec mf) : mf_(mf) {}

  const ManifoldSpec& manifold() const { return mf_; }
  const Map& coefficients() const { return c_; }
  bool empty() const { return c_.empty(); }
  size_t size() const { return c_.size(); }

  std::complex<double> get(const SpectralIndex& i) const {
    auto it = c_.find(i);
    return it == c_.end() ? std::complex<double>{} : it->second;
  }

  SpectralField& set(const SpectralIndex& i, std::complex<double> v) {
    require_valid(mf_, i);
    if (v == std::complex<double>{})
      c_.erase(i);
    else
      c_[i] = v;
    return *this;
  }

  SpectralField& add(const SpectralIndex& i, std::complex<double> v) { return set(i, get(i) + v); }

  /// Largest degree present (0 for the empty field).
  int max_degree() const {
    int d = 0;
    for (const auto& [i, v] : c_) d = std::max(d, degree(mf_, i));
    return d;
  }

  double l2_norm() const {
    double s = 0;
    for (const auto& [i, v] : c_) s += std::norm(v);
    return std::sqrt(s);
  }

  SpectralField& operator*=(std::complex<double> a) {
    if (a == std::complex<double>{}) {
      c_.clear();
      return *this;
    }
    for (auto& [i, v] : c_) v *= a;
    return *this;
  }

  SpectralField& operator+=(const SpectralField& o) {
    require(o.mf_ == mf_, ErrorKind::parameter, "field manifolds differ");
    for (const auto& [i, v] : o.c_) add(i, v);
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    require(o.mf_ == mf_, ErrorKind::parameter, "field manifolds differ");
    for (const auto& [i, v] : o.c_) add(i, -v);
    return *this;
  }

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(std::complex<double> s, SpectralField a) { return a *= s; }

  /// Keep only coefficients for which pred(index) holds.
  template <typename Pred>
  SpectralField filter(Pred&& pred) const {
    SpectralField out(mf_);
    for (const auto& [i, v] : c_)
      if (pred(i)) out.c_.emplace(i, v);
    return out;
  }

  /// Multiply each coefficient by f(index).
  template <typename F>
  SpectralField map(F&& f) const {
    SpectralField out(mf_);
    for (const auto& [i, v] : c_) {
      const std::complex<double> w = v * f(i);
      if (w != std::complex<double>{}) out.c_.emplace(i, w);
    }
    return out;
  }

  /// Coefficients as a dense vector over a given basis list.
  std::vector<std::complex<double>> dense(const std::vector<SpectralIndex>& basis) const {
    std::vector<std::complex<double>> out(basis.size());
    for (size_t k = 0; k < basis.size(); ++k) out[k] = get(basis[k]);
    return out;
  }

  static SpectralField from_dense(const ManifoldSpec& mf, const std::vector<SpectralIndex>& basis,
                                  const std::vector<std::complex<double>>& values) {
    require(basis.size() == values.size(), ErrorKind::parameter, "from_dense: size mismatch");
    SpectralField f(mf);
    for (size_t k = 0; k < basis.size(); ++k) f.set(basis[k], values[k]);
    return f;
  }

  bool operator==(const SpectralField&) const = default;

 private:
  ManifoldSpec mf_;
  Map c_;
};

}  // namespace sphlab
