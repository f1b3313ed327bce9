#pragma once

// JSON and CSV plumbing for polygons and reports. Needs the vendored nlohmann json.hpp.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bisteklov/errors.hpp"
#include "bisteklov/geometry_iso.hpp"
#include "bisteklov/verify/corpus.hpp"

namespace bisteklov::io {

using nlohmann::json;

// 17 significant digits, '.' decimal separator regardless of locale.
inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline PlanarPolygon polygon_from_json(const json& j) {
  const json& verts = j.is_object() ? j.at("vertices") : j;
  if (!verts.is_array()) throw Error(ErrorCode::InvalidPolygon, "polygon json: expected an array of [x, y] pairs");
  std::vector<Point> pts;
  for (const auto& v : verts) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw Error(ErrorCode::InvalidPolygon, "polygon json: each vertex must be [x, y]");
    pts.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  return PlanarPolygon(std::move(pts));
}

inline json polygon_to_json(const PlanarPolygon& p) {
  json a = json::array();
  for (const auto& v : p.vertices()) a.push_back({v.x, v.y});
  return a;
}

inline bool looks_like_vertex(const json& j) { return j.is_array() && j.size() == 2 && j[0].is_number(); }

// Accepts one polygon ([[x,y],...] or {"name":..,"vertices":..}) or an array of them.
inline std::vector<verify::NamedPolygon> polygons_from_json(const json& j, const std::string& stem = "polygon") {
  std::vector<verify::NamedPolygon> out;
  auto one = [&](const json& e, std::size_t idx) {
    std::string name = stem + "-" + std::to_string(idx);
    if (e.is_object() && e.contains("name")) name = e.at("name").get<std::string>();
    out.push_back({name, polygon_from_json(e)});
  };
  if (j.is_object() || (j.is_array() && !j.empty() && looks_like_vertex(j[0]))) {
    one(j, 0);
    if (!(j.is_object() && j.contains("name"))) out.back().name = stem;
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) one(j[i], i);
  } else {
    throw Error(ErrorCode::InvalidPolygon, "polygon json: unrecognized layout");
  }
  return out;
}

inline std::vector<verify::NamedPolygon> load_polygons(const std::string& path) {
  std::ifstream in(path);
  detail::require(static_cast<bool>(in), "cannot open polygon file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "polygon file " + path + ": " + e.what());
  }
  std::string stem = path;
  if (const auto s = stem.find_last_of('/'); s != std::string::npos) stem = stem.substr(s + 1);
  if (const auto d = stem.rfind('.'); d != std::string::npos) stem = stem.substr(0, d);
  return polygons_from_json(j, stem);
}

inline json to_json(const IsoReport& r) {
  return {{"tau", r.tau},
          {"area", r.area},
          {"perimeter", r.perimeter},
          {"boundary_centroid", {r.boundary_centroid.x, r.boundary_centroid.y}},
          {"moment2", r.moment2},
          {"asymmetry", r.asymmetry},
          {"asymmetry_center", {r.asymmetry_center.x, r.asymmetry_center.y}},
          {"sym_diff_centered", r.sym_diff_centered},
          {"c_constant", r.c_constant},
          {"delta", r.delta},
          {"moment_lhs", r.moment_lhs},
          {"moment_rhs", r.moment_rhs},
          {"lambda2_upper_bound", r.upper_bound},
          {"ball_radius", r.ball_radius},
          {"lambda2_ball", r.lambda2_ball},
          {"quantitative_bound", r.quantitative_bound},
          {"quantitative_slack", r.quantitative_slack()},
          {"moment_inequality", r.moment_inequality},
          {"ub_le_lambda2_ball", r.ub_below_ball},
          {"quantitative_holds", r.quantitative_holds}};
}

inline IsoReport iso_report_from_json(const json& j) {
  IsoReport r;
  r.tau = j.at("tau");
  r.area = j.at("area");
  r.perimeter = j.at("perimeter");
  r.boundary_centroid = {j.at("boundary_centroid")[0], j.at("boundary_centroid")[1]};
  r.moment2 = j.at("moment2");
  r.asymmetry = j.at("asymmetry");
  r.asymmetry_center = {j.at("asymmetry_center")[0], j.at("asymmetry_center")[1]};
  r.sym_diff_centered = j.at("sym_diff_centered");
  r.c_constant = j.at("c_constant");
  r.delta = j.at("delta");
  r.moment_lhs = j.at("moment_lhs");
  r.moment_rhs = j.at("moment_rhs");
  r.upper_bound = j.at("lambda2_upper_bound");
  r.ball_radius = j.at("ball_radius");
  r.lambda2_ball = j.at("lambda2_ball");
  r.quantitative_bound = j.at("quantitative_bound");
  r.moment_inequality = j.at("moment_inequality");
  r.ub_below_ball = j.at("ub_le_lambda2_ball");
  r.quantitative_holds = j.at("quantitative_holds");
  return r;
}

inline std::string iso_csv_header() {
  return "name,tau,area,perimeter,centroid_x,centroid_y,moment2,asymmetry,sym_diff_centered,c_constant,delta,"
         "moment_lhs,moment_rhs,lambda2_upper_bound,lambda2_ball,quantitative_bound,moment_inequality,"
         "ub_le_lambda2_ball,quantitative_holds";
}

inline std::string iso_csv_row(const std::string& name, const IsoReport& r) {
  std::string s = name;
  for (double v : {r.tau, r.area, r.perimeter, r.boundary_centroid.x, r.boundary_centroid.y, r.moment2, r.asymmetry,
                   r.sym_diff_centered, r.c_constant, r.delta, r.moment_lhs, r.moment_rhs, r.upper_bound,
                   r.lambda2_ball, r.quantitative_bound})
    s += "," + num(v);
  for (bool b : {r.moment_inequality, r.ub_below_ball, r.quantitative_holds}) s += b ? ",true" : ",false";
  return s;
}

}  // namespace bisteklov::io
