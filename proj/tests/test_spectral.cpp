#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "sphlab/harmonics/families.hpp"
#include "sphlab/spectral/grid.hpp"
#include "sphlab/spectral/manifold.hpp"
#include "sphlab/spectral/norms.hpp"
#include "sphlab/spectral/serialize.hpp"
#include "sphlab/spectral/transform.hpp"

using namespace sphlab;
using std::numbers::pi;

namespace {

SpectralField random_field(const ManifoldSpec& mf, int D, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  SpectralField f(mf);
  for (const auto& i : enumerate_basis(mf, D)) f.set(i, {g(rng), g(rng)});
  return f;
}

std::vector<ManifoldSpec> all_manifolds() {
  return {ManifoldSpec::sphere2(), ManifoldSpec::sphere2(1.7), ManifoldSpec::sphere3(), ManifoldSpec::product(),
          ManifoldSpec::product(0.6), ManifoldSpec::zonal(2), ManifoldSpec::zonal(3), ManifoldSpec::zonal(4)};
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) mx += std::log(x[i]), my += std::log(y[i]);
  mx /= x.size(), my /= y.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace

TEST(Eigenvalue, Examples) {
  EXPECT_EQ(eigenvalue(ManifoldSpec::sphere3(), EigenLabel{3, 0}), 8.0);
  EXPECT_EQ(eigenvalue(ManifoldSpec::sphere3(), SpectralIndex{2, 0, 0}), 8.0);
  EXPECT_EQ(eigenvalue(ManifoldSpec::sphere2(), SpectralIndex{1, 0, 0}), 2.0);
  EXPECT_EQ(eigenvalue(ManifoldSpec::product(1.0), EigenLabel{2, 3}), 16.0);
  EXPECT_EQ(eigenvalue(ManifoldSpec::product(1.0), SpectralIndex{-2, 3, 1}), 16.0);
  EXPECT_DOUBLE_EQ(eigenvalue(ManifoldSpec::product(2.0), EigenLabel{1, 2}), 1 + 6.0 / 4);
  EXPECT_DOUBLE_EQ(eigenvalue(ManifoldSpec::sphere2(2.0), SpectralIndex{3, 0, 0}), 3.0);
}

TEST(Eigenvalue, InvalidIndicesAndMonotonicity) {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::config;
  };
  EXPECT_EQ(kind([] { eigenvalue(ManifoldSpec::sphere3(), EigenLabel{0, 0}); }), ErrorKind::index);
  EXPECT_EQ(kind([] { eigenvalue(ManifoldSpec::sphere3(), SpectralIndex{1, 0, 0}); }), ErrorKind::index);
  EXPECT_EQ(kind([] { eigenvalue(ManifoldSpec::sphere2(), SpectralIndex{1, 2, 0}); }), ErrorKind::index);
  EXPECT_EQ(kind([] { eigenvalue(ManifoldSpec::product(), SpectralIndex{0, 1, 2}); }), ErrorKind::index);
  EXPECT_THROW(ManifoldSpec::sphere2(0.0), Error);
  for (int k = 1; k < 200; ++k)
    EXPECT_LE(eigenvalue(ManifoldSpec::sphere3(), EigenLabel{k, 0}),
              eigenvalue(ManifoldSpec::sphere3(), EigenLabel{k + 1, 0}));
  for (int m = 0; m < 6; ++m)
    for (int n = 0; n < 6; ++n) EXPECT_GE(eigenvalue(ManifoldSpec::product(0.3), EigenLabel{m, n}), 0.0);
}

TEST(Eigenvalue, BasisSizes) {
  // dim of degree-p harmonics: 2p+1 on S^2, (p+1)^2 on S^3
  for (int p = 0; p < 10; ++p) {
    EXPECT_EQ(eigenspace_basis(ManifoldSpec::sphere2(), p).size(), size_t(2 * p + 1));
    EXPECT_EQ(eigenspace_basis(ManifoldSpec::sphere3(), p).size(), size_t((p + 1) * (p + 1)));
  }
  EXPECT_EQ(eigenspace_basis(ManifoldSpec::product(), EigenLabel{0, 2}).size(), 5u);
  EXPECT_EQ(eigenspace_basis(ManifoldSpec::product(), EigenLabel{3, 2}).size(), 10u);
}

TEST(BuildGrid, WeightSumsAreVolumes) {
  EXPECT_NEAR(build_grid(ManifoldSpec::sphere2(), 0)->weight_sum(), 4 * pi, 1e-12);
  for (const auto& mf : all_manifolds())
    for (int D : {0, 1, 2, 5, 16, 33}) {
      const auto g = build_grid(mf, D);
      EXPECT_NEAR(g->weight_sum(), mf.volume(), 1e-10) << mf.name() << " D=" << D;
      for (double w : g->polar_weights) EXPECT_GT(w, 0);
      const auto r = build_grid(mf, D, {.azimuth_reduced = true});
      EXPECT_NEAR(r->weight_sum(), mf.volume(), 1e-10);
    }
}

TEST(BuildGrid, HighestWeightNormAndRefinement) {
  const auto r2 = highest_weight_harmonic(3, 2, true);
  EXPECT_NEAR(std::pow(lp_norm(synthesize(r2.field, build_grid(ManifoldSpec::sphere3(), 4)), 2), 2),
              2 * pi * pi / 3, 1e-12);
  const auto y = s2_basis(3, 1);
  const double a = std::pow(lp_norm(synthesize(y.field, build_grid(y.manifold(), 6)), 2), 2);
  const double b = std::pow(lp_norm(synthesize(y.field, build_grid(y.manifold(), 6, {.refine = 2})), 2), 2);
  EXPECT_LT(std::abs(a - b), 1e-13);
}

TEST(Transform, ZeroAndOneHot) {
  for (const auto& mf : all_manifolds()) {
    const auto g = build_grid(mf, 8);
    SpectralField zero(mf);
    const auto z = synthesize(zero, g);
    for (const auto& v : z.values) EXPECT_EQ(v, cplx{});
    EXPECT_TRUE(analyze(z, mf, 4).value.empty());
    const auto basis = enumerate_basis(mf, 4);
    const auto pick = basis[basis.size() / 2];
    SpectralField one(mf);
    one.set(pick, 1.0);
    const auto vals = synthesize(one, g);
    // pointwise values agree with direct evaluation
    const auto back = analyze(vals, mf, 4);
    EXPECT_FALSE(back.under_resolved);
    for (const auto& i : basis) EXPECT_NEAR(std::abs(back.value.get(i) - (i == pick ? 1.0 : 0.0)), 0.0, 1e-12);
  }
}

TEST(Transform, PointValuesMatchDirectEvaluation) {
  const auto mf = ManifoldSpec::sphere3();
  const auto f = random_field(mf, 5, 3);
  const auto g = build_grid(mf, 6);
  const auto v = synthesize(f, g);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const size_t k = rng() % g->size();
    const size_t i = k / (g->n_az1 * g->n_az2), j = (k / g->n_az2) % g->n_az1, l = k % g->n_az2;
    const Point pt{std::acos(g->polar_nodes[i]) / 2, g->az1(int(j)), g->az2(int(l))};
    EXPECT_LT(std::abs(v.values[k] - evaluate(f, pt)), 1e-12);
  }
}

TEST(Transform, RoundTripAndParseval) {
  const auto mf = ManifoldSpec::sphere3();
  const auto f = random_field(mf, 8, 11);
  const auto g = build_grid(mf, 16);
  const auto vals = synthesize(f, g);
  const auto back = analyze(vals, mf, 8);
  double err = 0;
  for (const auto& [i, c] : f.coefficients()) err = std::max(err, std::abs(back.value.get(i) - c));
  EXPECT_LT(err, 1e-11);
  for (const auto& m : all_manifolds()) {
    const auto h = random_field(m, 7, 5);
    const auto gg = build_grid(m, 14);
    const auto vv = synthesize(h, gg);
    EXPECT_NEAR(lp_norm(vv, 2), h.l2_norm(), 1e-10 * h.l2_norm()) << m.name();
    const auto bb = analyze(vv, m, 7).value;
    EXPECT_NEAR((bb - h).l2_norm(), 0.0, 1e-10 * h.l2_norm()) << m.name();
  }
}

TEST(Transform, UnderResolutionIsFlagged) {
  const auto mf = ManifoldSpec::sphere2();
  const auto f = random_field(mf, 6, 2);
  EXPECT_TRUE(synthesize(f, build_grid(mf, 4)).under_resolved);
  EXPECT_FALSE(synthesize(f, build_grid(mf, 6)).under_resolved);
  EXPECT_TRUE(analyze(synthesize(f, build_grid(mf, 8)), mf, 6).under_resolved);
  EXPECT_FALSE(analyze(synthesize(f, build_grid(mf, 12)), mf, 6).under_resolved);
  EXPECT_TRUE(analyze(synthesize(f, build_grid(mf, 12, {.azimuth_reduced = true})), mf, 6).under_resolved);
}

TEST(LpNorm, Examples) {
  const auto mf = ManifoldSpec::sphere3();
  const auto g = build_grid(mf, 4);
  GridFunction one(g, std::vector<cplx>(g->size(), 1.0));
  EXPECT_NEAR(lp_norm(one, 2), std::sqrt(2 * pi * pi), 1e-12);
  EXPECT_NEAR(lp_norm(one, 1), 2 * pi * pi, 1e-11);
  EXPECT_NEAR(lp_norm(one, INFINITY), 1.0, 0);
  const auto z8 = zonal_harmonic(3, 8);
  EXPECT_NEAR(sup_norm(z8.field, build_grid(z8.manifold(), 16)), 9 / std::sqrt(2 * pi * pi), 1e-12);
  EXPECT_THROW(lp_norm(one, 0.5), Error);
}

TEST(LpNorm, TriangleInequality) {
  for (const auto& mf : all_manifolds()) {
    const auto g = build_grid(mf, 10);
    for (int t = 0; t < 10; ++t) {
      const auto a = synthesize(random_field(mf, 5, 100 + t), g);
      const auto b = synthesize(random_field(mf, 5, 200 + t), g);
      GridFunction s(g);
      for (size_t i = 0; i < s.size(); ++i) s.values[i] = a.values[i] + b.values[i];
      for (double p : {1.0, 2.0, 3.5, double(INFINITY)})
        EXPECT_LE(lp_norm(s, p), (lp_norm(a, p) + lp_norm(b, p)) * (1 + 1e-14));
    }
  }
}

TEST(Sobolev, Examples) {
  const auto mf = ManifoldSpec::sphere3();
  for (int p : {0, 1, 5, 20}) {
    SpectralField e(mf);
    e.set({p, p, 0}, 1.0);
    const double lam = p * (p + 2.0);
    EXPECT_NEAR(sobolev_norm(e, 0), 1.0, 1e-15);
    for (double s : {-1.0, 0.5, 1.0, 2.0})
      EXPECT_NEAR(sobolev_norm(e, s), std::pow(japanese(lam), s / 2), 1e-12 * std::pow(japanese(lam), s / 2));
  }
  const auto u = random_field(mf, 3, 1), v = random_field(mf, 6, 2).filter([](auto& i) { return i.a > 3; });
  for (double s : {0.0, 1.0, 2.5})
    EXPECT_NEAR(std::pow(sobolev_norm(u + v, s), 2), std::pow(sobolev_norm(u, s), 2) + std::pow(sobolev_norm(v, s), 2),
                1e-10 * std::pow(sobolev_norm(u + v, s), 2));
}

TEST(Dyadic, SphereThreeBandAtTwo) {
  const auto mf = ManifoldSpec::sphere3();
  const auto f = random_field(mf, 10, 4);
  const auto d = dyadic_project(f, 2, DyadicMode::band);
  std::set<int> ks;
  for (const auto& [i, c] : d.coefficients()) ks.insert(i.a + 1);
  EXPECT_EQ(ks, (std::set<int>{3, 4}));
  // brute-force band oracle on <lambda> = sqrt(1 + lambda^2)
  for (int k = 1; k < 40; ++k) {
    const double lam = k * k - 1.0;
    for (double N : {1.0, 2.0, 4.0, 8.0}) {
      const double r = std::sqrt(std::sqrt(1 + lam * lam));
      EXPECT_EQ(in_dyadic_band(lam, N), r >= N && r < 2 * N) << k << " " << N;
    }
  }
}

TEST(Dyadic, ProjectorPropertiesAllManifolds) {
  for (const auto& mf : all_manifolds()) {
    const auto f = random_field(mf, 9, 8);
    SpectralField sum(mf);
    const double top = dyadic_ceiling(f);
    for (double N = 1; N <= top; N *= 2) {
      const auto d = dyadic_project(f, N, DyadicMode::band);
      EXPECT_EQ(dyadic_project(d, N, DyadicMode::band), d);
      sum += d;
      SpectralField low(mf);
      for (double M = 1; M <= N; M *= 2) low += dyadic_project(f, M, DyadicMode::band);
      EXPECT_EQ(low, dyadic_project(f, N, DyadicMode::lowpass));
    }
    EXPECT_NEAR((sum - f).l2_norm(), 0.0, 1e-14);
    EXPECT_TRUE(dyadic_project(f, 0.5, DyadicMode::lowpass).empty());
    EXPECT_THROW(dyadic_project(f, 3, DyadicMode::band), Error);
    EXPECT_THROW(dyadic_project(f, 0.5, DyadicMode::band), Error);
  }
}

TEST(Smoothed, IdentityScalingCommutation) {
  const auto mf = ManifoldSpec::sphere3();
  const auto f = random_field(mf, 6, 9);
  const auto same = smoothed_project(f, [](double) { return 1.0; }, 3.0);
  EXPECT_EQ(same, f);
  const auto gauss = windows::gaussian(0.7);
  const double center = std::sqrt(15.0);  // k = 4
  const auto s = smoothed_project(f, gauss, center);
  for (const auto& [i, c] : f.coefficients())
    if (i.a == 3) {
      EXPECT_NEAR(std::abs(s.get(i) - c * gauss(0.0)), 0.0, 1e-15);
    }
  for (double N : {1.0, 2.0, 4.0}) {
    const auto a = dyadic_project(smoothed_project(f, gauss, center), N, DyadicMode::band);
    const auto b = smoothed_project(dyadic_project(f, N, DyadicMode::band), gauss, center);
    EXPECT_NEAR((a - b).l2_norm(), 0.0, 1e-15);
  }
}

TEST(Serialize, RoundTrip) {
  for (const auto& mf : all_manifolds()) {
    const auto f = random_field(mf, 4, 77);
    const auto j = to_json(f);
    EXPECT_EQ(j["schema"], kFieldSchema);
    const auto back = field_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back, f);
  }
  auto j = to_json(random_field(ManifoldSpec::sphere3(), 2, 1));
  j["coefficients"][0]["index"] = {1, 0, 0};
  EXPECT_THROW(field_from_json(j), Error);
  j["schema"] = "other";
  EXPECT_THROW(field_from_json(j), Error);
}

// Bernstein-type growth of sup/L2 on dyadic bands.
TEST(Dyadic, SupNormGrowthOnBands) {
  std::vector<double> Ns, rand_ratio, zonal_ratio;
  for (double N = 4; N <= 64; N *= 2) {
    // zonal witness: all zonal modes in the band, unit coefficients
    const auto zmf = ManifoldSpec::zonal(3);
    SpectralField z(zmf);
    for (int p = 0; p <= 4 * int(N); ++p) z.set({p, 0, 0}, 1.0);
    const auto zb = dyadic_project(z, N, DyadicMode::band);
    zonal_ratio.push_back(sup_norm(zb, build_grid(zmf, 4 * int(N))) / zb.l2_norm());
    Ns.push_back(N);
  }
  for (double N = 4; N <= 64; N *= 2) {
    const auto mf = ManifoldSpec::sphere3();
    const auto f = dyadic_project(random_field(mf, 2 * int(N), std::uint64_t(N)), N, DyadicMode::band);
    const auto vals = synthesize(f, build_grid(mf, f.max_degree()));
    rand_ratio.push_back(lp_norm(vals, INFINITY) / f.l2_norm());
  }
  EXPECT_LE(fit_slope(Ns, rand_ratio), 1.5 + 0.1);
  EXPECT_GE(fit_slope(Ns, zonal_ratio), 1.0);
}
