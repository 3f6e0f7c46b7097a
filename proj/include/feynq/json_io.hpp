#ifndef FEYNQ_JSON_IO_HPP
#define FEYNQ_JSON_IO_HPP

// JSON forms of the public types: graphs, arrangements, classes, count
// reports and surveys. Label sets are 1-based on the wire, matching the CLI.

#include "feynq/arrangement.hpp"
#include "feynq/count.hpp"
#include "feynq/graph.hpp"
#include "feynq/lclass.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace feynq {

inline nlohmann::json lclass_to_json(const LClass& a) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : a.coefficients()) coeffs.push_back(c.str());
  return {{"text", a.str()}, {"coefficients", coeffs}};
}

inline nlohmann::json graph_to_json(const FeynmanGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [i, j] : g.edges())
    edges.push_back(nlohmann::json::array({i, j}));
  return {{"vertices", g.vertex_count()}, {"edges", edges}};
}

inline FeynmanGraph graph_from_json(const nlohmann::json& j) {
  const int n = j.at("vertices").get<int>();
  std::vector<FeynmanGraph::Edge> edges;
  for (const auto& e : j.at("edges"))
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return FeynmanGraph(n, std::move(edges));
}

inline nlohmann::json arrangement_to_json(const AffineArrangement& arr) {
  nlohmann::json planes = nlohmann::json::array();
  for (const auto& h : arr.hyperplanes())
    planes.push_back({{"normal", h.normal}, {"offset", h.offset}});
  return {{"d", arr.dimension()},
          {"q", arr.modulus()},
          {"hyperplanes", planes}};
}

inline AffineArrangement arrangement_from_json(const nlohmann::json& j) {
  const int d = j.at("d").get<int>();
  const auto q = j.at("q").get<std::uint32_t>();
  std::vector<Hyperplane> planes;
  for (const auto& hj : j.at("hyperplanes")) {
    Hyperplane h;
    h.normal = hj.at("normal").get<std::vector<std::uint32_t>>();
    h.offset = hj.at("offset").get<std::uint32_t>();
    planes.push_back(std::move(h));
  }
  return AffineArrangement(d, q, std::move(planes));
}

inline nlohmann::json position_to_json(const PositionClass& pc) {
  nlohmann::json j;
  switch (pc.kind) {
  case PositionClass::Kind::GeneralPosition:
    j["kind"] = "general";
    break;
  case PositionClass::Kind::AlmostGeneral:
    j["kind"] = "almost-general";
    break;
  case PositionClass::Kind::Violating:
    j["kind"] = "violating";
    break;
  }
  if (pc.is_almost_general()) {
    nlohmann::json theta = nlohmann::json::array();
    for (const auto& set : pc.theta) {
      nlohmann::json labels = nlohmann::json::array();
      for (int l : set) labels.push_back(l + 1);
      theta.push_back(labels);
    }
    j["theta"] = theta;
  }
  if (pc.is_violating()) {
    nlohmann::json witness = nlohmann::json::array();
    for (int l : pc.witness) witness.push_back(l + 1);
    j["witness"] = witness;
  }
  return j;
}

inline std::string position_to_string(const PositionClass& pc) {
  const auto set_str = [](const std::vector<int>& labels) {
    std::string s = "{";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(labels[i] + 1);
    }
    return s + "}";
  };
  switch (pc.kind) {
  case PositionClass::Kind::GeneralPosition:
    return "general";
  case PositionClass::Kind::AlmostGeneral: {
    std::string s = "almost-general, theta = [";
    for (std::size_t i = 0; i < pc.theta.size(); ++i) {
      if (i) s += ", ";
      s += set_str(pc.theta[i]);
    }
    return s + "]";
  }
  case PositionClass::Kind::Violating:
    return "violating, witness = " + set_str(pc.witness);
  }
  return "";
}

inline nlohmann::json count_report_to_json(const CountReport& r) {
  return {{"graph", graph_to_json(r.graph)},
          {"d", r.d},
          {"q", r.q},
          {"count", r.count.str()},
          {"algorithm",
           r.algorithm == CountAlgorithm::Brute ? "brute" : "fibrewise"},
          {"elapsed_ms", r.elapsed_ms},
          {"threads", r.threads}};
}

inline nlohmann::json survey_to_json(const FibreSurvey& s) {
  return {{"n", s.n},
          {"d", s.d},
          {"q", s.q},
          {"case1_count", s.case1_count.str()},
          {"case2_count", s.case2_count.str()},
          {"case3_general", s.case3_general.str()},
          {"case3_almost_general", s.case3_almost.str()},
          {"case3_violating", s.case3_violating.str()},
          {"fibre_point_total", s.fibre_point_total.str()},
          {"fibrewise_total", s.fibrewise_total.str()}};
}

} // namespace feynq

#endif
