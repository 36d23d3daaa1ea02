#ifndef ALCOVE_MCF_SERIALIZE_HPP
#define ALCOVE_MCF_SERIALIZE_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "singularity.hpp"

namespace alcove_mcf {

using json = nlohmann::json;

inline json to_json(const ActionData& d) {
  json roots = json::array();
  for (const RestrictedRoot& r : d.roots)
    roots.push_back({{"coeffs", r.vector}, {"mV", r.m_V}, {"mH", r.m_H}, {"label", r.label}});
  return json{{"name", d.name},
              {"rank", d.rank},
              {"ambient_dim", d.ambient_dim()},
              {"roots", roots},
              {"simple", d.simple_indices},
              {"highest", d.highest_index},
              {"delta_factor", d.delta_factor},
              {"params", d.params}};
}

inline ActionData load_custom(const json& j) {
  ActionData d;
  try {
    d.name = j.at("name").get<std::string>();
    d.rank = j.at("rank").get<int>();
    const std::size_t dim = j.at("ambient_dim").get<std::size_t>();
    for (const json& rj : j.at("roots")) {
      RestrictedRoot r;
      r.vector = rj.at("coeffs").get<Vec>();
      if (r.vector.size() != dim)
        throw std::invalid_argument("root coefficient length mismatch");
      r.m_V = rj.at("mV").get<int>();
      r.m_H = rj.at("mH").get<int>();
      r.label = rj.value("label", "");
      d.roots.push_back(std::move(r));
    }
    d.simple_indices = j.at("simple").get<std::vector<int>>();
    d.highest_index = j.at("highest").get<int>();
    d.delta_factor = j.at("delta_factor").get<double>();
    if (j.contains("params"))
      d.params = j.at("params").get<std::map<std::string, int>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("parse failure: ") + e.what());
  }
  validate(d);
  return d;
}

inline ActionData load_custom_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("parse failure: ") + e.what());
  }
  return load_custom(j);
}

inline const char* status_name(FlowStatus s) {
  switch (s) {
    case FlowStatus::WallHit: return "WallHit";
    case FlowStatus::FixedPoint: return "FixedPoint";
    case FlowStatus::Budget: return "Budget";
  }
  return "?";
}

inline json stratum_to_json(const ActionData& d, const Alcove& alc,
                            const std::vector<int>& wall_indices) {
  json walls = json::array();
  for (int wi : wall_indices) {
    const WallConstraint& w = alc.walls[wi];
    walls.push_back({{"root_label", d.roots[w.root_index].label}, {"level", w.level}});
  }
  return walls;
}

inline json to_json(const ActionData& d, const Alcove& alc, const StratumSpec& s) {
  return json{{"walls", stratum_to_json(d, alc, s.active_walls)},
              {"dim", s.dim},
              {"representative", s.representative}};
}

inline json to_json(const ActionData& d, const Alcove& alc, const FlowResult& r) {
  json samples = json::array();
  for (const auto& [t, x] : r.samples) {
    json row = json::array();
    row.push_back(t);
    for (double c : x) row.push_back(c);
    samples.push_back(row);
  }
  json j{{"status", status_name(r.status)},
         {"terminal", r.terminal},
         {"samples", samples}};
  if (std::isfinite(r.hit_time)) j["hit_time"] = r.hit_time;
  if (!r.terminal_walls.empty())
    j["stratum"] = json{{"walls", stratum_to_json(d, alc, r.terminal_walls)}};
  return j;
}

inline json to_json(const ActionData& d, const Alcove& alc, const ZeroReport& z) {
  json j{{"point", z.point},
         {"residual", z.residual},
         {"context", z.interior ? "Interior" : "Stratum"}};
  if (z.interior)
    j["jacobian_divergence"] = z.jacobian_divergence;
  else
    j["stratum"] = json{{"walls", stratum_to_json(d, alc, z.stratum_walls)}};
  return j;
}

inline json to_json(const SingularityReport& r) {
  json samples = json::array();
  for (const auto& [t, q] : r.samples) samples.push_back({t, q});
  return json{{"dominant_family", r.dominant_family},
              {"m_e_dominant", r.m_e_dominant},
              {"predicted_limit", r.predicted_limit},
              {"estimated_limit", r.estimated_limit},
              {"relative_error", r.relative_error},
              {"T_est", r.T_est},
              {"T_sensitivity", r.T_sensitivity},
              {"samples", samples}};
}

}  // namespace alcove_mcf

#endif
