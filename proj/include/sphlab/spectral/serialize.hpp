#pragma once

// JSON form of a spectral field:
//
//   {
//     "schema": "sphlab.spectral_field/1",
//     "manifold": {"kind": "S3", "rho": 1.0, "dim": 3},
//     "coefficients": [{"index": [p, m1, m2], "re": 0.5, "im": -0.25}, ...]
//   }
//
// kind is one of S2, S3, S2xS1, zonal. Index triples follow SpectralIndex.

#include <json.hpp>
#include <string>

#include "sphlab/core/error.hpp"
#include "sphlab/spectral/field.hpp"

namespace sphlab {

inline constexpr const char* kFieldSchema = "sphlab.spectral_field/1";

inline nlohmann::json to_json(const ManifoldSpec& mf) {
  const char* kind = mf.kind == ManifoldKind::s2      ? "S2"
                     : mf.kind == ManifoldKind::s3    ? "S3"
                     : mf.kind == ManifoldKind::s2xs1 ? "S2xS1"
                                                      : "zonal";
  return {{"kind", kind}, {"rho", mf.rho}, {"dim", mf.dim}};
}

inline ManifoldSpec manifold_from_json(const nlohmann::json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "S2") return ManifoldSpec::sphere2(j.value("rho", 1.0));
    if (kind == "S3") return ManifoldSpec::sphere3();
    if (kind == "S2xS1") return ManifoldSpec::product(j.value("rho", 1.0));
    if (kind == "zonal") return ManifoldSpec::zonal(j.at("dim").get<int>());
    fail(ErrorKind::parameter, "unknown manifold kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parameter, std::string("manifold descriptor: ") + e.what());
  }
}

inline nlohmann::json to_json(const SpectralField& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [i, c] : f.coefficients())
    coeffs.push_back({{"index", {i.a, i.b, i.c}}, {"re", c.real()}, {"im", c.imag()}});
  return {{"schema", kFieldSchema}, {"manifold", to_json(f.manifold())}, {"coefficients", coeffs}};
}

inline SpectralField field_from_json(const nlohmann::json& j) {
  try {
    require(j.at("schema").get<std::string>() == kFieldSchema, ErrorKind::parameter, "unsupported field schema");
    SpectralField f(manifold_from_json(j.at("manifold")));
    for (const auto& c : j.at("coefficients")) {
      const auto& ix = c.at("index");
      require(ix.size() == 3, ErrorKind::parameter, "index must have three entries");
      f.set({ix[0].get<int>(), ix[1].get<int>(), ix[2].get<int>()},
            {c.at("re").get<double>(), c.at("im").get<double>()});
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parameter, std::string("spectral field JSON: ") + e.what());
  }
}

}  // namespace sphlab
