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

// Hand-built scenes with feature tables worked out by hand from the geometry.
// All lanes are 4 m wide, so the certainty kernel is exp(-d^2 / 2) before
// normalization and the projection gate is 6 m.
#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "core/scene.hpp"
#include "core/scene_graph.hpp"

namespace ssg::testing {

struct MicroCase {
  std::string name;
  LaneMap map;
  TrafficScene scene;
  std::vector<NodeFeatures> nodes;
  std::vector<GraphEdge> edges;
};

inline TrafficParticipant agent(const std::string& id, double x, double y, double speed, ObjectClass c,
                                double heading = 0.0) {
  return TrafficParticipant{id, {x, y}, speed, heading, c};
}

inline Lane lane(const std::string& id, Vec2 a, Vec2 b) { return Lane(id, {a, b}, 4.0); }

// [cert_lon, cert_lat, cert_int, path, int_path, origin_d, target_d, int_origin_d, int_target_d]
inline GraphEdge edge(std::size_t o, std::size_t t, EdgeFeatures f) { return GraphEdge{o, t, f}; }

inline TrafficScene scene_of(const std::string& id, std::vector<TrafficParticipant> ps) {
  return TrafficScene{id, "micro", std::move(ps), "m"};
}

inline std::vector<MicroCase> micro_cases() {
  constexpr auto Car = ObjectClass::Car;
  constexpr auto Truck = ObjectClass::Truck;
  constexpr auto Ped = ObjectClass::Pedestrian;
  constexpr auto Bike = ObjectClass::Bike;
  const NodeFeatures car7{7, 1, 0, 0, 0};
  std::vector<MicroCase> cases;

  LaneMap straight("m", {lane("L", {0, 0}, {100, 0})}, {});

  // 1. One car: a single node, no edges.
  cases.push_back({"single car", straight, scene_of("c1", {agent("a", 10, 0, 7, Car)}), {car7}, {}});

  // 2. Two centered cars 12 m apart on one lane.
  cases.push_back({"two centered cars",
                   straight,
                   scene_of("c2", {agent("a", 10, 0, 5, Car), agent("b", 22, 0, 7, Car)}),
                   {{5, 1, 0, 0, 0}, car7},
                   {edge(0, 1, {1, 0, 0, 12, 0, 0, 0, 0, 0}), edge(1, 0, {1, 0, 0, -12, 0, 0, 0, 0, 0})}});

  // 3. Off-center car and truck; a single lane keeps certainty 1, offsets are signed (left positive).
  cases.push_back({"off-center car and truck",
                   straight,
                   scene_of("c3", {agent("a", 10, 0.5, 5, Car), agent("b", 30, -1, 7, Truck)}),
                   {{5, 1, 0, 0, 0}, {7, 0, 1, 0, 0}},
                   {edge(0, 1, {1, 0, 0, 20, 0, 0.5, -1, 0, 0}), edge(1, 0, {1, 0, 0, -20, 0, -1, 0.5, 0, 0})}});

  // 4. Same lane but 55 m apart: beyond the 50 m horizon, no edges.
  cases.push_back({"beyond horizon",
                   straight,
                   scene_of("c4", {agent("a", 5, 0, 7, Car), agent("b", 60, 0, 7, Car)}),
                   {car7, car7},
                   {}});

  // 5. Two parallel lanes 4 m apart. a sits 1 m left of L1 (3 m right of L2), b is centered on
  //    L2 (4 m left of L1). Both participants keep two identities.
  {
    LaneMap m("m", {lane("L1", {0, 0}, {100, 0}), lane("L2", {0, 4}, {100, 4})},
              {LaneRelation{RelationKind::Parallel, "L1", "L2", {}, {}}});
    const double a1 = std::exp(-0.5) / (std::exp(-0.5) + std::exp(-4.5));
    const double a2 = std::exp(-4.5) / (std::exp(-0.5) + std::exp(-4.5));
    const double b1 = std::exp(-8.0) / (1.0 + std::exp(-8.0));
    const double b2 = 1.0 / (1.0 + std::exp(-8.0));
    const double lon = a1 * b1 + a2 * b2;  // same-lane pairs
    const double lat = a1 * b2 + a2 * b1;  // cross-lane pairs
    cases.push_back({"parallel lanes, split certainty",
                     m,
                     scene_of("c5", {agent("a", 10, 1, 6, Car), agent("b", 25, 4, 8, Car)}),
                     {{6, 1, 0, 0, 0}, {8, 1, 0, 0, 0}},
                     {edge(0, 1, {lon, lat, 0, 15, 0, 1, 0, 0, 0}), edge(1, 0, {lon, lat, 0, -15, 0, 0, 1, 0, 0})}});
  }

  // 6. Successor chain L1 -> L2, junction at x = 50. a has 10 m left on L1, b is 10 m into L2.
  {
    LaneMap m("m", {lane("L1", {0, 0}, {50, 0}), lane("L2", {50, 0}, {100, 0})},
              {LaneRelation{RelationKind::Successor, "L1", "L2", {}, {}}});
    cases.push_back({"successor chain",
                     m,
                     scene_of("c6", {agent("a", 40, 0, 9, Car), agent("b", 60, 0, 4, Car)}),
                     {{9, 1, 0, 0, 0}, {4, 1, 0, 0, 0}},
                     {edge(0, 1, {1, 0, 0, 20, 0, 0, 0, 0, 0}), edge(1, 0, {1, 0, 0, -20, 0, 0, 0, 0, 0})}});
  }

  // 7. Crossing lanes meeting at (20, 0): 20 m along both. Car 15 m before it, bike 12 m before it.
  {
    LaneMap m("m", {lane("L1", {0, 0}, {40, 0}), lane("L2", {20, -20}, {20, 20})},
              {LaneRelation{RelationKind::Intersecting, "L1", "L2", 20.0, 20.0}});
    cases.push_back({"crossing car and bike",
                     m,
                     scene_of("c7", {agent("a", 5, 0, 6, Car), agent("b", 20, -12, 3, Bike, M_PI / 2)}),
                     {{6, 1, 0, 0, 0}, {3, 0, 0, 0, 1}},
                     {edge(0, 1, {0, 0, 1, 0, 15, 0, 0, 0, 0}), edge(1, 0, {0, 0, 1, 0, 12, 0, 0, 0, 0})}});
  }

  // 8. Pedestrian 20 m off the lane: no identity, isolated node.
  cases.push_back({"off-lane pedestrian",
                   straight,
                   scene_of("c8", {agent("a", 10, 0, 4, Car), agent("p", 15, 20, 1.2, Ped)}),
                   {{4, 1, 0, 0, 0}, {1.2, 0, 0, 1, 0}},
                   {}});

  // 9. Five vehicles, six projection identities, all three relation types.
  //    L1 y=0 and L2 y=7 are parallel; L3 runs north along x=60 and crosses L1 at
  //    (60,0) [s 60 on L1, 40 on L3] and L2 at (60,7) [s 60 on L2, 47 on L3].
  //    v1 (10,0) on L1; v2 (30,3.5) halfway between L1 and L2 (certainty 1/2 each);
  //    v3 (45,7) on L2; v4 (60,-20) on L3 at s 20; v5 (80,0) on L1.
  {
    LaneMap m("m", {lane("L1", {0, 0}, {100, 0}), lane("L2", {0, 7}, {100, 7}), lane("L3", {60, -40}, {60, 40})},
              {LaneRelation{RelationKind::Parallel, "L1", "L2", {}, {}},
               LaneRelation{RelationKind::Intersecting, "L1", "L3", 60.0, 40.0},
               LaneRelation{RelationKind::Intersecting, "L2", "L3", 60.0, 47.0}});
    cases.push_back(
        {"five-vehicle reference scene",
         m,
         scene_of("c9", {agent("v1", 10, 0, 8, Car), agent("v2", 30, 3.5, 9, Car), agent("v3", 45, 7, 7, Car),
                         agent("v4", 60, -20, 5, Truck, M_PI / 2), agent("v5", 80, 0, 0, Car)}),
         {{8, 1, 0, 0, 0}, {9, 1, 0, 0, 0}, {7, 1, 0, 0, 0}, {5, 0, 1, 0, 0}, {0, 1, 0, 0, 0}},
         {
             // v1 -> v2: L1/L1 longitudinal and L1/L2 lateral, each 1/2; 20 m. Ties keep v2's L1 identity (d 3.5).
             edge(0, 1, {0.5, 0.5, 0, 20, 0, 0, 3.5, 0, 0}),
             edge(0, 2, {0, 1, 0, 35, 0, 0, 0, 0, 0}),   // v1 -> v3 lateral
             edge(0, 3, {0, 0, 1, 0, 50, 0, 0, 0, 0}),   // crossing at 60 on L1, v1 at 10
             // v1 -> v5 is 70 m along L1: beyond the horizon.
             edge(1, 0, {0.5, 0.5, 0, -20, 0, 3.5, 0, 0, 0}),
             edge(1, 2, {0.5, 0.5, 0, 15, 0, 3.5, 0, 0, 0}),
             edge(1, 3, {0, 0, 1, 0, 30, 0, 0, 3.5, 0}),  // 60 - 30 on both L1 and L2
             edge(1, 4, {0.5, 0.5, 0, 50, 0, 3.5, 0, 0, 0}),
             edge(2, 0, {0, 1, 0, -35, 0, 0, 0, 0, 0}),
             edge(2, 1, {0.5, 0.5, 0, -15, 0, 0, 3.5, 0, 0}),
             edge(2, 3, {0, 0, 1, 0, 15, 0, 0, 0, 0}),   // 60 - 45 on L2
             edge(2, 4, {0, 1, 0, 35, 0, 0, 0, 0, 0}),
             edge(3, 0, {0, 0, 1, 0, 20, 0, 0, 0, 0}),   // 40 - 20 on L3
             edge(3, 1, {0, 0, 1, 0, 23.5, 0, 0, 0, 3.5}),  // mean of 40 - 20 and 47 - 20
             edge(3, 2, {0, 0, 1, 0, 27, 0, 0, 0, 0}),   // 47 - 20
             edge(3, 4, {0, 0, 1, 0, 20, 0, 0, 0, 0}),
             edge(4, 1, {0.5, 0.5, 0, -50, 0, 0, 3.5, 0, 0}),
             edge(4, 2, {0, 1, 0, -35, 0, 0, 0, 0, 0}),
             edge(4, 3, {0, 0, 1, 0, -20, 0, 0, 0, 0}),  // v5 is 20 m past the crossing
         }});
  }

  // 10. Parallel lanes with offset starts (L2 begins at x = 10), so the four identity pairs carry
  //     different arclength gaps. a at (20,2): s 20 on L1, s 10 on L2, certainty 1/2 each.
  //     b at (40,0): s 40 on L1 (d 0), s 30 on L2 (d -4).
  {
    LaneMap m("m", {lane("L1", {0, 0}, {100, 0}), lane("L2", {10, 4}, {110, 4})},
              {LaneRelation{RelationKind::Parallel, "L1", "L2", {}, {}}});
    const double b1 = 1.0 / (1.0 + std::exp(-8.0));
    const double b2 = std::exp(-8.0) / (1.0 + std::exp(-8.0));
    // a->b pairs: (L1,L1) lon 20, (L1,L2) lat 10, (L2,L1) lat 30, (L2,L2) lon 20; weights a_i * b_j.
    const double lon_ab = 0.5 * b1 + 0.5 * b2;
    const double lat_ab = 0.5 * b2 + 0.5 * b1;
    const double path_ab = (0.5 * b1 * 20 + 0.5 * b2 * 10 + 0.5 * b1 * 30 + 0.5 * b2 * 20) / (lon_ab + lat_ab);
    // b->a pairs: (L1,L1) lon -20, (L1,L2) lat -30, (L2,L1) lat -10, (L2,L2) lon -20.
    const double path_ba = (b1 * 0.5 * -20 + b1 * 0.5 * -30 + b2 * 0.5 * -10 + b2 * 0.5 * -20) / (lon_ab + lat_ab);
    cases.push_back({"offset parallel lanes, weighted mean",
                     m,
                     scene_of("c10", {agent("a", 20, 2, 3, Car), agent("b", 40, 0, 11, Car)}),
                     {{3, 1, 0, 0, 0}, {11, 1, 0, 0, 0}},
                     {edge(0, 1, {lon_ab, lat_ab, 0, path_ab, 0, 2, 0, 0, 0}),
                      edge(1, 0, {lon_ab, lat_ab, 0, path_ba, 0, 0, 2, 0, 0})}});
  }
  return cases;
}

// Empty when the graph matches; otherwise a description of the first mismatch.
inline std::string compare_micro(const MicroCase& c, const SceneGraph& g, double cert_tol = 1e-9,
                                 double dist_tol = 1e-6) {
  std::ostringstream err;
  if (g.nodes.size() != c.nodes.size()) {
    err << c.name << ": " << g.nodes.size() << " nodes, expected " << c.nodes.size();
    return err.str();
  }
  for (std::size_t i = 0; i < c.nodes.size(); ++i)
    if (g.nodes[i].features != c.nodes[i]) {
      err << c.name << ": node " << i << " features differ";
      return err.str();
    }
  if (g.edges.size() != c.edges.size()) {
    err << c.name << ": " << g.edges.size() << " edges, expected " << c.edges.size();
    return err.str();
  }
  for (std::size_t k = 0; k < c.edges.size(); ++k) {
    const auto& got = g.edges[k];
    const auto& want = c.edges[k];
    if (got.origin != want.origin || got.target != want.target) {
      err << c.name << ": edge " << k << " is " << got.origin << "->" << got.target << ", expected " << want.origin
          << "->" << want.target;
      return err.str();
    }
    for (std::size_t f = 0; f < kEdgeFeatureWidth; ++f) {
      const double tol = f <= kCertInt ? cert_tol : dist_tol;
      if (std::abs(got.features[f] - want.features[f]) > tol) {
        err << c.name << ": edge " << want.origin << "->" << want.target << " feature " << f << " = "
            << got.features[f] << ", expected " << want.features[f];
        return err.str();
      }
    }
  }
  return {};
}

}  // namespace ssg::testing
