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

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "core/projection.hpp"
#include "core/scene.hpp"

namespace ssg {

inline constexpr std::size_t kNodeFeatureWidth = 5;
inline constexpr std::size_t kEdgeFeatureWidth = 9;

// Node feature layout: [speed, onehot_car, onehot_truck, onehot_pedestrian, onehot_bike].
using NodeFeatures = std::array<double, kNodeFeatureWidth>;

// Edge feature layout.
enum EdgeFeature : std::size_t {
  kCertLon = 0,
  kCertLat,
  kCertInt,
  kPathDistance,
  kIntPathDistance,
  kOriginCenterlineDistance,
  kTargetCenterlineDistance,
  kIntOriginCenterlineDistance,
  kIntTargetCenterlineDistance,
};
using EdgeFeatures = std::array<double, kEdgeFeatureWidth>;

enum class RelationType { Longitudinal, Lateral, Intersecting };

struct GraphNode {
  std::string participant_id;
  NodeFeatures features{};

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  std::size_t origin = 0;
  std::size_t target = 0;
  EdgeFeatures features{};

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct SceneGraph {
  std::string scene_id;
  std::string location_label;
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;  // sorted by (origin, target), at most one per ordered pair

  friend bool operator==(const SceneGraph&, const SceneGraph&) = default;
};

NodeFeatures node_features(const TrafficParticipant& p);

struct PairRelation {
  RelationType type = RelationType::Longitudinal;
  // Signed Frenet path distance (longitudinal/lateral, positive when the
  // target is downstream) or origin distance to the crossing (intersecting).
  double distance = 0.0;
};

// Precomputed lane-pair lookups for one map.
class LaneTopology {
 public:
  explicit LaneTopology(const LaneMap& map);

  const LaneMap& map() const { return *map_; }
  bool parallel(std::size_t a, std::size_t b) const;
  // Crossing arclength on lane a where it meets lane b.
  std::optional<double> crossing(std::size_t a, std::size_t b) const;
  // Shortest distance from the end of lane `from` to the start of lane `to`
  // along successor chains, bounded by `limit`.
  std::optional<double> chain_gap(std::size_t from, std::size_t to, double limit) const;

 private:
  const LaneMap* map_;
  std::size_t n_;
  std::vector<char> parallel_;
  std::vector<std::optional<double>> crossing_;
};

// Relation priority: same lane, parallel lanes, successor chain, crossing.
std::optional<PairRelation> classify_pair(const ProjectionIdentity& origin, const ProjectionIdentity& target,
                                          const LaneTopology& topology, double horizon);
std::optional<PairRelation> classify_pair(const ProjectionIdentity& origin, const ProjectionIdentity& target,
                                          const LaneMap& map, double horizon);

struct GraphOptions {
  ProjectionOptions projection;
  double horizon_m = 50.0;
};

SceneGraph build_scene_graph(const TrafficScene& scene, const LaneMap& map, const GraphOptions& options = {});

struct GraphLevelFeatures {
  double e_lon = 0.0;  // summed longitudinal certainty per car
  double e_lat = 0.0;
  double e_int = 0.0;
  double edge_count = 0.0;
  double car_count = 0.0;
  double mean_car_speed = 0.0;
};

GraphLevelFeatures graph_level_features(const SceneGraph& g);

inline constexpr std::array<const char*, 6> kGraphFeatureNames = {"E_lon", "E_lat", "E_int", "E", "V_car",
                                                                  "mean_speed"};
// Looks up a feature by one of kGraphFeatureNames.
double graph_feature(const GraphLevelFeatures& f, const std::string& name);

}  // namespace ssg
