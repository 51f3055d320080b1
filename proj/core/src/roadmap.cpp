// Copyright 2026 The Shuttle Nav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shuttle/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include "absl/status/status.h"
#include "nlohmann/json.hpp"

namespace shuttle::roadmap {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kLengthTolerance = 1e-6;

std::string join(const std::vector<std::string>& lines) {
  std::string out = "invalid road map";
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

// Field reader that records diagnostics instead of throwing on the first one.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  const json* member(const json& obj, const std::string& key, const std::string& path,
                     bool required = true) {
    if (!obj.is_object()) {
      errors_.push_back(path + ": expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) errors_.push_back(path + "." + key + ": missing field");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const json& obj, const std::string& key,
                               const std::string& path, bool required = true) {
    const json* v = member(obj, key, path, required);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number()) {
      errors_.push_back(path + "." + key + ": expected a number");
      return std::nullopt;
    }
    return v->get<double>();
  }

  std::optional<int> integer(const json& obj, const std::string& key,
                             const std::string& path) {
    const json* v = member(obj, key, path);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number_integer()) {
      errors_.push_back(path + "." + key + ": expected an integer");
      return std::nullopt;
    }
    return v->get<int>();
  }

  std::optional<std::string> string(const json& obj, const std::string& key,
                                    const std::string& path) {
    const json* v = member(obj, key, path);
    if (v == nullptr) return std::nullopt;
    if (!v->is_string()) {
      errors_.push_back(path + "." + key + ": expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<Vec2> point(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      errors_.push_back(path + ": expected [x, y]");
      return std::nullopt;
    }
    return Vec2{v[0].get<double>(), v[1].get<double>()};
  }

  std::optional<std::vector<Vec2>> points(const json& v, const std::string& path) {
    if (!v.is_array()) {
      errors_.push_back(path + ": expected an array of points");
      return std::nullopt;
    }
    std::vector<Vec2> out;
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto p = point(v[i], path + "[" + std::to_string(i) + "]");
      if (p) {
        out.push_back(*p);
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return out;
  }

  const json* array(const json& obj, const std::string& key, const std::string& path,
                    bool required = true) {
    const json* v = member(obj, key, path, required);
    if (v != nullptr && !v->is_array()) {
      errors_.push_back(path + "." + key + ": expected an array");
      return nullptr;
    }
    return v;
  }

 private:
  std::vector<std::string>& errors_;
};

bool is_convex(const Polygon& poly) {
  if (poly.size() < 3) return false;
  int sign = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[(i + 1) % poly.size()] - poly[i];
    const Vec2 b = poly[(i + 2) % poly.size()] - poly[(i + 1) % poly.size()];
    const double c = a.cross(b);
    if (std::abs(c) < 1e-12) continue;
    const int s = c > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return sign != 0;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text,
                                                    std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

ordered_json point_json(const Vec2& p) { return ordered_json::array({p.x, p.y}); }

ordered_json points_json(const std::vector<Vec2>& pts) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : pts) arr.push_back(point_json(p));
  return arr;
}

}  // namespace

std::string_view to_string(ScenarioTag tag) {
  switch (tag) {
    case ScenarioTag::kCommon:
      return "common";
    case ScenarioTag::kParking:
      return "parking";
    case ScenarioTag::kIntersection:
      return "intersection";
  }
  return "common";
}

std::optional<ScenarioTag> scenario_tag_from_string(std::string_view name) {
  if (name == "common") return ScenarioTag::kCommon;
  if (name == "parking") return ScenarioTag::kParking;
  if (name == "intersection") return ScenarioTag::kIntersection;
  return std::nullopt;
}

MapError::MapError(std::vector<std::string> diagnostics)
    : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::vector<std::string> check_invariants(const RoadMap& map) {
  std::vector<std::string> errors;
  const auto n_nodes = static_cast<int>(map.nodes.size());
  for (std::size_t i = 0; i < map.edges.size(); ++i) {
    const Edge& e = map.edges[i];
    const std::string name = "edge " + std::to_string(e.id);
    if (e.id != static_cast<int>(i)) errors.push_back(name + ": ids must be dense");
    if (e.from < 0 || e.from >= n_nodes || e.to < 0 || e.to >= n_nodes) {
      errors.push_back(name + ": references an unknown node");
      continue;
    }
    if (e.polyline.size() < 2) {
      errors.push_back(name + ": polyline needs at least two points");
      continue;
    }
    if (geometry::distance(e.polyline.front(), map.nodes[e.from]) > kLengthTolerance ||
        geometry::distance(e.polyline.back(), map.nodes[e.to]) > kLengthTolerance) {
      errors.push_back(name + ": polyline endpoints must coincide with its nodes");
    }
    const double arc = geometry::polyline_length(e.polyline);
    if (std::abs(arc - e.length) > kLengthTolerance) {
      errors.push_back(name + ": length " + std::to_string(e.length) +
                       " differs from polyline arc length " + std::to_string(arc));
    }
    if (!(arc > 0.0)) errors.push_back(name + ": zero length");
    if (!(e.speed_limit > 0.0) || e.speed_limit > kMaxRouteSpeed) {
      errors.push_back(name + ": speed_limit must lie in (0, 4.17] m/s");
    }
    if (!(e.half_width_left > 0.0) || !(e.half_width_right > 0.0)) {
      errors.push_back(name + ": half widths must be positive");
    }
    if (e.tag == ScenarioTag::kIntersection) {
      if (!map.stop_lines.contains(e.id)) {
        errors.push_back(name + ": intersection edge has no stop line");
      }
      auto areas = map.observation_areas.find(e.id);
      if (areas == map.observation_areas.end() || areas->second.empty()) {
        errors.push_back(name + ": intersection edge has no observation area");
      }
    }
  }
  auto edge_ok = [&](int id) { return id >= 0 && id < static_cast<int>(map.edges.size()); };
  for (const auto& [station, ref] : map.stations) {
    if (!edge_ok(ref.edge)) {
      errors.push_back("station " + station + ": unknown edge " + std::to_string(ref.edge));
    } else if (ref.s < 0.0 || ref.s > map.edges[ref.edge].length) {
      errors.push_back("station " + station + ": s outside [0, edge length]");
    }
  }
  for (const auto& [edge, s] : map.stop_lines) {
    const std::string name = "stop line on edge " + std::to_string(edge);
    if (!edge_ok(edge)) {
      errors.push_back(name + ": unknown edge");
      continue;
    }
    if (map.edges[edge].tag != ScenarioTag::kIntersection) {
      errors.push_back(name + ": edge is not an intersection");
    }
    if (s < 0.0 || s > map.edges[edge].length) {
      errors.push_back(name + ": s outside [0, edge length]");
    }
  }
  for (const auto& [edge, polys] : map.observation_areas) {
    const std::string name = "observation area on edge " + std::to_string(edge);
    if (!edge_ok(edge)) {
      errors.push_back(name + ": unknown edge");
      continue;
    }
    if (map.edges[edge].tag != ScenarioTag::kIntersection) {
      errors.push_back(name + ": edge is not an intersection");
    }
    for (const auto& p : polys) {
      if (!is_convex(p)) errors.push_back(name + ": polygon must be convex");
    }
  }
  for (std::size_t i = 0; i < map.curbs.size(); ++i) {
    if (!is_convex(map.curbs[i])) {
      errors.push_back("curb " + std::to_string(i) + ": polygon must be convex");
    }
  }
  return errors;
}

RoadMap load_roadmap(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte);
    throw MapError({"parse error at line " + std::to_string(line) + ", column " +
                    std::to_string(col) + ": " + e.what()});
  }

  std::vector<std::string> errors;
  Reader rd(errors);
  RoadMap map;

  if (auto version = rd.integer(doc, "schema_version", "map")) {
    if (*version != kMapSchemaVersion) {
      errors.push_back("map.schema_version: unsupported version " +
                       std::to_string(*version));
    }
  }

  if (const json* nodes = rd.array(doc, "nodes", "map")) {
    map.nodes.resize(nodes->size());
    std::vector<bool> seen(nodes->size(), false);
    for (std::size_t i = 0; i < nodes->size(); ++i) {
      const std::string path = "nodes[" + std::to_string(i) + "]";
      auto id = rd.integer((*nodes)[i], "id", path);
      auto x = rd.number((*nodes)[i], "x", path);
      auto y = rd.number((*nodes)[i], "y", path);
      if (!id || !x || !y) continue;
      if (*id < 0 || *id >= static_cast<int>(nodes->size()) || seen[*id]) {
        errors.push_back(path + ".id: ids must be dense and unique");
        continue;
      }
      seen[*id] = true;
      map.nodes[*id] = {*x, *y};
    }
  }

  if (const json* edges = rd.array(doc, "edges", "map")) {
    map.edges.resize(edges->size());
    std::vector<bool> seen(edges->size(), false);
    for (std::size_t i = 0; i < edges->size(); ++i) {
      const json& ej = (*edges)[i];
      const std::string path = "edges[" + std::to_string(i) + "]";
      auto id = rd.integer(ej, "id", path);
      auto from = rd.integer(ej, "from", path);
      auto to = rd.integer(ej, "to", path);
      auto tag_name = rd.string(ej, "tag", path);
      auto speed = rd.number(ej, "speed_limit", path);
      auto left = rd.number(ej, "half_width_left", path);
      auto right = rd.number(ej, "half_width_right", path);
      if (!id || !from || !to || !tag_name || !speed || !left || !right) continue;
      if (*id < 0 || *id >= static_cast<int>(edges->size()) || seen[*id]) {
        errors.push_back(path + ".id: ids must be dense and unique");
        continue;
      }
      seen[*id] = true;
      Edge e;
      e.id = *id;
      e.from = *from;
      e.to = *to;
      auto tag = scenario_tag_from_string(*tag_name);
      if (!tag) {
        errors.push_back(path + ".tag: unknown scenario tag '" + *tag_name + "'");
        continue;
      }
      e.tag = *tag;
      e.speed_limit = *speed;
      e.half_width_left = *left;
      e.half_width_right = *right;
      if (const json* poly = rd.member(ej, "polyline", path, false)) {
        if (auto pts = rd.points(*poly, path + ".polyline")) e.polyline = *pts;
      } else if (e.from >= 0 && e.to >= 0 &&
                 e.from < static_cast<int>(map.nodes.size()) &&
                 e.to < static_cast<int>(map.nodes.size())) {
        e.polyline = {map.nodes[e.from], map.nodes[e.to]};
      }
      e.length = geometry::polyline_length(e.polyline);
      if (auto declared = rd.number(ej, "length", path, false)) {
        if (std::abs(*declared - e.length) > kLengthTolerance) {
          errors.push_back(path + ".length: declared " + std::to_string(*declared) +
                           " but polyline arc length is " + std::to_string(e.length));
        }
      }
      map.edges[e.id] = std::move(e);
    }
  }

  if (const json* stations = rd.array(doc, "stations", "map", false)) {
    for (std::size_t i = 0; i < stations->size(); ++i) {
      const std::string path = "stations[" + std::to_string(i) + "]";
      auto name = rd.string((*stations)[i], "name", path);
      auto edge = rd.integer((*stations)[i], "edge", path);
      auto s = rd.number((*stations)[i], "s", path);
      if (!name || !edge || !s) continue;
      if (!map.stations.emplace(*name, StationRef{*edge, *s}).second) {
        errors.push_back(path + ".name: duplicate station '" + *name + "'");
      }
    }
  }

  if (const json* areas = rd.array(doc, "observation_areas", "map", false)) {
    for (std::size_t i = 0; i < areas->size(); ++i) {
      const std::string path = "observation_areas[" + std::to_string(i) + "]";
      auto edge = rd.integer((*areas)[i], "edge", path);
      const json* polys = rd.array((*areas)[i], "polygons", path);
      if (!edge || polys == nullptr) continue;
      for (std::size_t k = 0; k < polys->size(); ++k) {
        if (auto pts = rd.points((*polys)[k], path + ".polygons[" + std::to_string(k) + "]")) {
          map.observation_areas[*edge].push_back(geometry::make_ccw(*pts));
        }
      }
    }
  }

  if (const json* lines = rd.array(doc, "stop_lines", "map", false)) {
    for (std::size_t i = 0; i < lines->size(); ++i) {
      const std::string path = "stop_lines[" + std::to_string(i) + "]";
      auto edge = rd.integer((*lines)[i], "edge", path);
      auto s = rd.number((*lines)[i], "s", path);
      if (!edge || !s) continue;
      if (!map.stop_lines.emplace(*edge, *s).second) {
        errors.push_back(path + ": edge " + std::to_string(*edge) +
                         " has more than one stop line");
      }
    }
  }

  if (const json* curbs = rd.array(doc, "curbs", "map", false)) {
    for (std::size_t i = 0; i < curbs->size(); ++i) {
      if (auto pts = rd.points((*curbs)[i], "curbs[" + std::to_string(i) + "]")) {
        map.curbs.push_back(geometry::make_ccw(*pts));
      }
    }
  }

  if (errors.empty()) errors = check_invariants(map);
  if (!errors.empty()) throw MapError(std::move(errors));
  return map;
}

RoadMap load_roadmap_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MapError({"cannot open map file '" + path + "'"});
  std::stringstream buf;
  buf << in.rdbuf();
  return load_roadmap(buf.str());
}

std::string serialize_roadmap(const RoadMap& map) {
  ordered_json doc;
  doc["schema_version"] = kMapSchemaVersion;
  ordered_json nodes = ordered_json::array();
  for (std::size_t i = 0; i < map.nodes.size(); ++i) {
    nodes.push_back({{"id", i}, {"x", map.nodes[i].x}, {"y", map.nodes[i].y}});
  }
  doc["nodes"] = nodes;
  ordered_json edges = ordered_json::array();
  for (const auto& e : map.edges) {
    ordered_json ej;
    ej["id"] = e.id;
    ej["from"] = e.from;
    ej["to"] = e.to;
    ej["polyline"] = points_json(e.polyline);
    ej["length"] = e.length;
    ej["tag"] = to_string(e.tag);
    ej["speed_limit"] = e.speed_limit;
    ej["half_width_left"] = e.half_width_left;
    ej["half_width_right"] = e.half_width_right;
    edges.push_back(ej);
  }
  doc["edges"] = edges;
  ordered_json stations = ordered_json::array();
  for (const auto& [name, ref] : map.stations) {
    stations.push_back({{"name", name}, {"edge", ref.edge}, {"s", ref.s}});
  }
  doc["stations"] = stations;
  ordered_json areas = ordered_json::array();
  for (const auto& [edge, polys] : map.observation_areas) {
    ordered_json pj = ordered_json::array();
    for (const auto& p : polys) pj.push_back(points_json(p));
    areas.push_back({{"edge", edge}, {"polygons", pj}});
  }
  doc["observation_areas"] = areas;
  ordered_json lines = ordered_json::array();
  for (const auto& [edge, s] : map.stop_lines) lines.push_back({{"edge", edge}, {"s", s}});
  doc["stop_lines"] = lines;
  ordered_json curbs = ordered_json::array();
  for (const auto& c : map.curbs) curbs.push_back(points_json(c));
  doc["curbs"] = curbs;
  return doc.dump(2) + "\n";
}

Vec2 GlobalRoute::position_at(double s) const {
  const auto& cum = cumulative_s;
  std::size_t seg = 0;
  if (s >= cum.back()) {
    seg = cum.size() - 2;
  } else if (s > 0.0) {
    seg = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), s) -
                                   cum.begin()) - 1;
  }
  const double t = (s - cum[seg]) / (cum[seg + 1] - cum[seg]);
  return centerline[seg] + (centerline[seg + 1] - centerline[seg]) * t;
}

const RouteSegment& GlobalRoute::segment_at(double s) const {
  for (const auto& seg : segments) {
    if (s < seg.s_end) return seg;
  }
  return segments.back();
}

EdgePosition GlobalRoute::edge_position_at(double s) const {
  const RouteSegment& seg = segment_at(s);
  return {seg.edge_id, std::clamp(s - seg.s_begin, 0.0, seg.s_end - seg.s_begin)};
}

std::optional<double> GlobalRoute::route_s(int edge, double edge_s) const {
  for (const auto& seg : segments) {
    if (seg.edge_id == edge) return seg.s_begin + edge_s;
  }
  return std::nullopt;
}

namespace {

GlobalRoute stitch(const RoadMap& map, const std::vector<int>& edge_ids) {
  GlobalRoute route;
  route.edge_ids = edge_ids;
  double offset = 0.0;
  for (int id : edge_ids) {
    const Edge& e = map.edges[id];
    for (std::size_t i = 0; i < e.polyline.size(); ++i) {
      const Vec2& p = e.polyline[i];
      if (route.centerline.empty()) {
        route.centerline.push_back(p);
        route.cumulative_s.push_back(0.0);
        continue;
      }
      const double step = geometry::distance(route.centerline.back(), p);
      if (step <= 0.0) continue;
      route.centerline.push_back(p);
      route.cumulative_s.push_back(route.cumulative_s.back() + step);
    }
    route.segments.push_back({id, offset, offset + e.length, e.tag, e.speed_limit,
                              e.half_width_left, e.half_width_right});
    offset += e.length;
  }
  // Segment bounds use edge lengths; pin the last one to the stitched length.
  route.segments.back().s_end = std::max(route.segments.back().s_end, route.length());
  return route;
}

}  // namespace

absl::StatusOr<GlobalRoute> plan_global_route(const RoadMap& map, EdgePosition start,
                                              const std::string& goal_station) {
  auto station = map.stations.find(goal_station);
  if (station == map.stations.end()) {
    return absl::NotFoundError("unknown station '" + goal_station + "'");
  }
  if (start.edge < 0 || start.edge >= static_cast<int>(map.edges.size())) {
    return absl::InvalidArgumentError("start edge does not exist");
  }
  const Edge& start_edge = map.edges[start.edge];
  if (start.s < 0.0 || start.s > start_edge.length) {
    return absl::InvalidArgumentError("start position is not on its edge");
  }
  const StationRef goal = station->second;

  std::vector<int> edges;
  if (goal.edge == start.edge && goal.s >= start.s) {
    edges = {start.edge};
  } else {
    const int source = start_edge.to;
    const int target = map.edges[goal.edge].from;
    const std::size_t n = map.nodes.size();
    std::vector<std::vector<int>> out(n);
    for (const auto& e : map.edges) out[e.from].push_back(e.id);

    // Scaled just below 1 so rounding never makes the chord heuristic exceed
    // the true remaining length.
    auto heuristic = [&](int node) {
      return geometry::distance(map.nodes[node], map.nodes[target]) * (1.0 - 1e-12);
    };
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> g(n, kInf);
    std::vector<int> via(n, -1);
    using Entry = std::tuple<double, double, int>;  // f, g, node
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    g[source] = 0.0;
    open.emplace(heuristic(source), 0.0, source);
    while (!open.empty()) {
      const auto [f, gn, node] = open.top();
      open.pop();
      if (gn > g[node]) continue;
      if (node == target) break;
      for (int eid : out[node]) {
        const Edge& e = map.edges[eid];
        const double cand = gn + e.length;
        if (cand < g[e.to] || (cand == g[e.to] && via[e.to] > eid)) {
          const bool improved = cand < g[e.to];
          g[e.to] = cand;
          via[e.to] = eid;
          if (improved) open.emplace(cand + heuristic(e.to), cand, e.to);
        }
      }
    }
    if (g[target] == kInf) {
      return absl::NotFoundError("no route to station '" + goal_station + "'");
    }
    std::vector<int> middle;
    for (int node = target; node != source;) {
      const int eid = via[node];
      middle.push_back(eid);
      node = map.edges[eid].from;
    }
    std::reverse(middle.begin(), middle.end());
    edges.push_back(start.edge);
    edges.insert(edges.end(), middle.begin(), middle.end());
    edges.push_back(goal.edge);
  }

  GlobalRoute route = stitch(map, edges);
  route.destination = goal_station;
  route.start_s = start.s;
  route.goal_s = route.segments.back().s_begin + goal.s;
  route.active = true;
  return route;
}

GlobalRoute truncate_route(const GlobalRoute& route, const RoadMap& map,
                           const TaskState& task, double current_s,
                           const TruncationParams& params) {
  if (!route.active || task.phase == TaskPhase::kDwelling) return route;
  const double threshold = current_s + params.safety_margin;
  if (threshold >= route.goal_s) return route;

  std::optional<std::pair<double, std::string>> best;
  for (const auto& [name, ref] : map.stations) {
    // A station can lie on several route segments when the route revisits an
    // edge; take every occurrence.
    for (const auto& seg : route.segments) {
      if (seg.edge_id != ref.edge) continue;
      const double s = seg.s_begin + ref.s;
      if (s > threshold && s < route.goal_s && (!best || s < best->first)) {
        best = {s, name};
      }
    }
  }

  GlobalRoute out = route;
  if (!out.original_destination) out.original_destination = route.destination;
  if (best) {
    out.goal_s = best->first;
    out.destination = best->second;
    return out;
  }
  const double needed = params.vehicle_width + params.width_clearance;
  for (double s = threshold; s < route.goal_s; s += params.scan_step) {
    if (route.segment_at(s).half_width_right >= needed) {
      out.goal_s = s;
      out.destination = "safe-stop";
      return out;
    }
  }
  return route;
}

bool resume_check(TaskState& task, const geometry::OrientedBox& ego,
                  const std::vector<world::AgentState>& nearby, double clock_dt) {
  task.dwell_timer = std::min(task.dwell_duration, task.dwell_timer + clock_dt);
  if (task.dwell_timer < task.dwell_duration) return false;
  const auto ego_poly = ego.corners();
  for (const auto& agent : nearby) {
    if (agent.cls != world::AgentClass::kPedestrian) continue;
    const auto poly = agent.footprint().corners();
    if (geometry::polygon_distance(ego_poly, poly) < task.pedestrian_clear_radius) {
      return false;
    }
  }
  return true;
}

}  // namespace shuttle::roadmap
