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

#include "route_oracle.hpp"

#include <limits>

namespace shuttle::oracle {

std::optional<std::vector<int>> dijkstra_route(const roadmap::RoadMap& map,
                                               roadmap::EdgePosition start,
                                               const std::string& station) {
  const auto it = map.stations.find(station);
  if (it == map.stations.end()) return std::nullopt;
  const auto goal = it->second;
  if (goal.edge == start.edge && goal.s >= start.s) return std::vector<int>{start.edge};

  const auto& from_edge = map.edges.at(static_cast<std::size_t>(start.edge));
  const auto& to_edge = map.edges.at(static_cast<std::size_t>(goal.edge));
  const std::size_t n = map.nodes.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<bool> done(n, false);
  dist[static_cast<std::size_t>(from_edge.to)] = 0.0;

  // O(n^2) selection keeps this free of any queue tie semantics.
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t u = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && dist[i] < inf && (u == n || dist[i] < dist[u])) u = i;
    }
    if (u == n) break;
    done[u] = true;
    for (const auto& e : map.edges) {
      if (static_cast<std::size_t>(e.from) != u) continue;
      const double c = dist[u] + e.length;
      auto& dv = dist[static_cast<std::size_t>(e.to)];
      if (c < dv) dv = c;
    }
  }
  const auto target = static_cast<std::size_t>(to_edge.from);
  if (dist[target] == inf) return std::nullopt;

  std::vector<int> middle;
  std::size_t v = target;
  const auto source = static_cast<std::size_t>(from_edge.to);
  std::size_t guard = 0;
  while (v != source) {
    int via = -1;
    for (const auto& e : map.edges) {
      const auto f = static_cast<std::size_t>(e.from);
      if (static_cast<std::size_t>(e.to) != v || dist[f] == inf) continue;
      if (dist[f] + e.length == dist[v] && (via < 0 || e.id < via)) via = e.id;
    }
    if (via < 0 || ++guard > map.edges.size()) return std::nullopt;
    middle.push_back(via);
    v = static_cast<std::size_t>(map.edges[static_cast<std::size_t>(via)].from);
  }
  std::vector<int> out{start.edge};
  out.insert(out.end(), middle.rbegin(), middle.rend());
  out.push_back(goal.edge);
  return out;
}

}  // namespace shuttle::oracle
