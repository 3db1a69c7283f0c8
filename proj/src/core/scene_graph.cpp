/* Copyright 2026 The SSG Embedding Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "core/scene_graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "core/error.hpp"

namespace ssg {

NodeFeatures node_features(const TrafficParticipant& p) {
  NodeFeatures f{};
  f[0] = p.speed;
  f[1 + static_cast<std::size_t>(p.object_class)] = 1.0;
  return f;
}

LaneTopology::LaneTopology(const LaneMap& map)
    : map_(&map), n_(map.lanes().size()), parallel_(n_ * n_, 0), crossing_(n_ * n_) {
  for (const auto& rel : map.relations()) {
    const std::size_t a = *map.lane_index(rel.a);
    const std::size_t b = *map.lane_index(rel.b);
    switch (rel.kind) {
      case RelationKind::Parallel:
        parallel_[a * n_ + b] = 1;
        parallel_[b * n_ + a] = 1;
        break;
      case RelationKind::Intersecting:
        crossing_[a * n_ + b] = *rel.intersection_arclen_a;
        crossing_[b * n_ + a] = *rel.intersection_arclen_b;
        break;
      case RelationKind::Successor:
        break;
    }
  }
}

bool LaneTopology::parallel(std::size_t a, std::size_t b) const { return parallel_[a * n_ + b] != 0; }

std::optional<double> LaneTopology::crossing(std::size_t a, std::size_t b) const { return crossing_[a * n_ + b]; }

std::optional<double> LaneTopology::chain_gap(std::size_t from, std::size_t to, double limit) const {
  // Dijkstra over successor links; the cost of entering a lane is the length
  // of the lane being left.
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  std::vector<double> best(n_, std::numeric_limits<double>::infinity());
  for (std::size_t next : map_->successors(from)) {
    if (0.0 < best[next]) {
      best[next] = 0.0;
      queue.emplace(0.0, next);
    }
  }
  while (!queue.empty()) {
    auto [dist, lane] = queue.top();
    queue.pop();
    if (dist > best[lane]) continue;
    if (lane == to) return dist;
    const double through = dist + map_->lane(lane).length();
    if (through > limit) continue;
    for (std::size_t next : map_->successors(lane)) {
      if (through < best[next]) {
        best[next] = through;
        queue.emplace(through, next);
      }
    }
  }
  return std::nullopt;
}

std::optional<PairRelation> classify_pair(const ProjectionIdentity& origin, const ProjectionIdentity& target,
                                          const LaneTopology& topology, double horizon) {
  const std::size_t lo = origin.lane_index;
  const std::size_t lt = target.lane_index;
  if (lo == lt) {
    const double path = target.s - origin.s;
    if (std::abs(path) <= horizon) return PairRelation{RelationType::Longitudinal, path};
    return std::nullopt;
  }
  if (topology.parallel(lo, lt)) return PairRelation{RelationType::Lateral, target.s - origin.s};

  const double origin_len = topology.map().lane(lo).length();
  const double target_len = topology.map().lane(lt).length();
  const double remaining_o = origin_len - origin.s;
  if (remaining_o + target.s <= horizon) {
    if (auto gap = topology.chain_gap(lo, lt, horizon)) {
      const double path = remaining_o + *gap + target.s;
      if (path <= horizon) return PairRelation{RelationType::Longitudinal, path};
    }
  }
  const double remaining_t = target_len - target.s;
  if (remaining_t + origin.s <= horizon) {
    if (auto gap = topology.chain_gap(lt, lo, horizon)) {
      const double path = remaining_t + *gap + origin.s;
      if (path <= horizon) return PairRelation{RelationType::Longitudinal, -path};
    }
  }
  if (auto cross_s = topology.crossing(lo, lt)) return PairRelation{RelationType::Intersecting, *cross_s - origin.s};
  return std::nullopt;
}

std::optional<PairRelation> classify_pair(const ProjectionIdentity& origin, const ProjectionIdentity& target,
                                          const LaneMap& map, double horizon) {
  return classify_pair(origin, target, LaneTopology(map), horizon);
}

namespace {

// Running merge of all identity pairs between one ordered participant pair.
struct EdgeAccumulator {
  bool related = false;
  std::array<double, 3> weight{};    // per RelationType
  double path_weighted = 0.0;        // longitudinal + lateral
  double int_weighted = 0.0;
  double best_origin_cert = -1.0, best_target_cert = -1.0;
  double origin_d = 0.0, target_d = 0.0;
  double best_int_origin_cert = -1.0, best_int_target_cert = -1.0;
  double int_origin_d = 0.0, int_target_d = 0.0;

  void add(const ProjectionIdentity& o, const ProjectionIdentity& t, const PairRelation& rel) {
    related = true;
    const double w = o.certainty * t.certainty;
    weight[static_cast<std::size_t>(rel.type)] += w;
    if (rel.type == RelationType::Intersecting) {
      int_weighted += w * rel.distance;
      if (o.certainty > best_int_origin_cert) {
        best_int_origin_cert = o.certainty;
        int_origin_d = o.d;
      }
      if (t.certainty > best_int_target_cert) {
        best_int_target_cert = t.certainty;
        int_target_d = t.d;
      }
    } else {
      path_weighted += w * rel.distance;
      if (o.certainty > best_origin_cert) {
        best_origin_cert = o.certainty;
        origin_d = o.d;
      }
      if (t.certainty > best_target_cert) {
        best_target_cert = t.certainty;
        target_d = t.d;
      }
    }
  }

  EdgeFeatures features() const {
    EdgeFeatures f{};
    f[kCertLon] = std::min(1.0, weight[0]);
    f[kCertLat] = std::min(1.0, weight[1]);
    f[kCertInt] = std::min(1.0, weight[2]);
    const double path_w = weight[0] + weight[1];
    if (path_w > 0.0) {
      f[kPathDistance] = path_weighted / path_w;
      f[kOriginCenterlineDistance] = origin_d;
      f[kTargetCenterlineDistance] = target_d;
    }
    if (weight[2] > 0.0) {
      f[kIntPathDistance] = int_weighted / weight[2];
      f[kIntOriginCenterlineDistance] = int_origin_d;
      f[kIntTargetCenterlineDistance] = int_target_d;
    }
    return f;
  }
};

}  // namespace

SceneGraph build_scene_graph(const TrafficScene& scene, const LaneMap& map, const GraphOptions& options) {
  validate(scene);
  const LaneTopology topology(map);

  SceneGraph g;
  g.scene_id = scene.scene_id;
  g.location_label = scene.location_label;
  g.nodes.reserve(scene.participants.size());

  std::vector<std::vector<ProjectionIdentity>> identities;
  identities.reserve(scene.participants.size());
  for (const auto& p : scene.participants) {
    g.nodes.push_back({p.id, node_features(p)});
    identities.push_back(candidate_identities(p, map, options.projection));
  }

  const std::size_t n = scene.participants.size();
  for (std::size_t o = 0; o < n; ++o) {
    for (std::size_t t = 0; t < n; ++t) {
      if (o == t) continue;
      EdgeAccumulator acc;
      for (const auto& io : identities[o]) {
        for (const auto& it : identities[t]) {
          if (auto rel = classify_pair(io, it, topology, options.horizon_m)) acc.add(io, it, *rel);
        }
      }
      if (acc.related) g.edges.push_back({o, t, acc.features()});
    }
  }
  return g;
}

GraphLevelFeatures graph_level_features(const SceneGraph& g) {
  GraphLevelFeatures f;
  double speed_sum = 0.0;
  for (const auto& node : g.nodes) {
    if (node.features[1] == 1.0) {
      f.car_count += 1.0;
      speed_sum += node.features[0];
    }
  }
  for (const auto& e : g.edges) {
    f.e_lon += e.features[kCertLon];
    f.e_lat += e.features[kCertLat];
    f.e_int += e.features[kCertInt];
  }
  // Scenes without cars keep the raw sums.
  const double norm = f.car_count > 0.0 ? f.car_count : 1.0;
  f.e_lon /= norm;
  f.e_lat /= norm;
  f.e_int /= norm;
  f.edge_count = static_cast<double>(g.edges.size());
  f.mean_car_speed = f.car_count > 0.0 ? speed_sum / f.car_count : 0.0;
  return f;
}

double graph_feature(const GraphLevelFeatures& f, const std::string& name) {
  if (name == "E_lon") return f.e_lon;
  if (name == "E_lat") return f.e_lat;
  if (name == "E_int") return f.e_int;
  if (name == "E") return f.edge_count;
  if (name == "V_car") return f.car_count;
  if (name == "mean_speed") return f.mean_car_speed;
  fail(ErrorKind::Usage, "unknown graph feature '" + name + "'");
}

}  // namespace ssg
