#pragma once

#include <ostream>
#include <string>

#include <fmt/format.h>

#include "sphlab/evolution/nls.hpp"
#include "sphlab/evolution/trajectory.hpp"
#include "sphlab/spectral/serialize.hpp"

namespace sphlab {

inline constexpr const char* kTrajectorySchema = "sphlab.trajectory/1";

/// Manifest plus one SpectralField checkpoint per stored time.
inline nlohmann::json to_json(const Trajectory& tr) {
  nlohmann::json cps = nlohmann::json::array();
  for (size_t i = 0; i < tr.size(); ++i) cps.push_back(to_json(tr.field(i)));
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& i : tr.basis) basis.push_back({i.a, i.b, i.c});
  return {{"schema", kTrajectorySchema},
          {"manifest",
           {{"manifold", to_json(tr.manifold)},
            {"times", tr.times},
            {"dt", tr.dt},
            {"scheme", tr.scheme},
            {"order", tr.order},
            {"nonlinearity", tr.nonlinearity},
            {"basis", basis}}},
          {"checkpoints", cps}};
}

inline Trajectory trajectory_from_json(const nlohmann::json& j) {
  try {
    require(j.at("schema") == kTrajectorySchema, ErrorKind::parameter, "trajectory: unknown schema");
    const auto& m = j.at("manifest");
    std::vector<SpectralIndex> basis;
    for (const auto& b : m.at("basis")) basis.push_back({b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>()});
    Trajectory tr(manifold_from_json(m.at("manifold")), basis);
    tr.dt = m.at("dt").get<double>();
    tr.scheme = m.at("scheme").get<std::string>();
    tr.order = m.at("order").get<int>();
    tr.nonlinearity = m.at("nonlinearity").get<std::string>();
    const auto times = m.at("times").get<std::vector<double>>();
    const auto& cps = j.at("checkpoints");
    require(cps.size() == times.size(), ErrorKind::parameter, "trajectory: checkpoint count differs from times");
    for (size_t i = 0; i < times.size(); ++i) tr.push(times[i], field_from_json(cps[i]));
    return tr;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parameter, std::string("trajectory: malformed JSON: ") + e.what());
  }
}

/// t, mass, energy, mass_drift, energy_drift (drifts relative to t = 0)
inline void write_conservation_csv(std::ostream& os, const ConservationReport& c) {
  os << "t,mass,energy,mass_drift,energy_drift\n";
  for (size_t i = 0; i < c.times.size(); ++i) {
    const double md = std::abs(c.mass[i] - c.mass[0]) / c.mass[0];
    const double ed = c.energy[0] != 0 ? std::abs(c.energy[i] - c.energy[0]) / std::abs(c.energy[0]) : 0.0;
    os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", c.times[i], c.mass[i], c.energy[i], md, ed);
  }
}

}  // namespace sphlab
