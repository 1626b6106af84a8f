#pragma once

// Generator files:
//   {
//     "genus": 2,
//     "generators": [[[a, b], [c, d]], ...],      eight real 2x2 matrices
//     "relator": [1, 2, -1, -2, 3, 4, -3, -4],    signed 1-based indices
//     "polygon": [[x, y], ...],                  optional fundamental polygon
//     "center": [x, y]                           optional, default i
//   }

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lhc/fuchsian.hpp"
#include "lhc/report.hpp"

namespace lhc {

inline FuchsianGroup group_from_json(const Json& j) {
  try {
    std::vector<GroupElement> gens;
    for (const auto& m : j.at("generators")) {
      if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) throw DomainError("generator is not a 2x2 matrix");
      Mat2 g;
      g << m[0][0].get<double>(), m[0][1].get<double>(), m[1][0].get<double>(), m[1][1].get<double>();
      gens.emplace_back(Group::PSL2R, g);
    }
    const Word relator = j.at("relator").get<Word>();
    const int genus = j.value("genus", 2);
    std::vector<PointH2> polygon;
    if (j.contains("polygon")) {
      for (const auto& v : j.at("polygon")) polygon.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    }
    PointH2 center = basepoint_i();
    if (j.contains("center")) center = PointH2(j["center"].at(0).get<double>(), j["center"].at(1).get<double>());
    FuchsianGroup g(std::move(gens), relator, genus, std::move(polygon), center);
    g.validate(false);
    return g;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed generator file: ") + e.what());
  }
}

inline Json group_to_json(const FuchsianGroup& g) {
  Json gens = Json::array();
  for (const auto& e : g.generators()) {
    const Mat2 m = e.real_matrix();
    gens.push_back(Json::array({Json::array({m(0, 0), m(0, 1)}), Json::array({m(1, 0), m(1, 1)})}));
  }
  Json poly = Json::array();
  for (const auto& v : g.polygon()) poly.push_back(Json::array({v.x(), v.y()}));
  Json out{{"genus", g.genus()}, {"generators", gens}, {"relator", g.relator()}};
  if (!g.polygon().empty()) out["polygon"] = poly;
  out["center"] = Json::array({g.center().x(), g.center().y()});
  return out;
}

inline FuchsianGroup load_generators(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open generator file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  Json j;
  try {
    j = Json::parse(ss.str());
  } catch (const Json::exception& e) {
    throw DomainError(std::string("generator file is not valid JSON: ") + e.what());
  }
  return group_from_json(j);
}

inline void save_generators(const FuchsianGroup& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportWriteError("cannot open '" + path + "' for writing");
  out << canonical_json(group_to_json(g));
  if (!out) throw ReportWriteError("failed writing '" + path + "'");
}

}  // namespace lhc
