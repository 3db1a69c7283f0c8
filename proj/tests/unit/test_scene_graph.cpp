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

#include <doctest.h>

#include <algorithm>
#include <map>

#include "common/micro_scenes.hpp"
#include "core/error.hpp"
#include "core/random.hpp"
#include "core/scene_graph.hpp"
#include "core/synthetic.hpp"

using namespace ssg;
using namespace ssg::testing;

TEST_CASE("micro scenes match their hand-computed graphs") {
  for (const auto& c : micro_cases()) {
    CAPTURE(c.name);
    const auto g = build_scene_graph(c.scene, c.map);
    CHECK(compare_micro(c, g) == "");
  }
}

TEST_CASE("node features") {
  CHECK(node_features({"a", {0, 0}, 7, 0, ObjectClass::Car}) == NodeFeatures{7, 1, 0, 0, 0});
  CHECK(node_features({"a", {0, 0}, 2, 0, ObjectClass::Truck}) == NodeFeatures{2, 0, 1, 0, 0});
  CHECK(node_features({"a", {0, 0}, 1, 0, ObjectClass::Pedestrian}) == NodeFeatures{1, 0, 0, 1, 0});
  CHECK(node_features({"a", {0, 0}, 4, 0, ObjectClass::Bike}) == NodeFeatures{4, 0, 0, 0, 1});
}

TEST_CASE("empty scenes are rejected") {
  LaneMap m("m", {lane("a", {0, 0}, {10, 0})}, {});
  try {
    build_scene_graph(TrafficScene{"s", "l", {}, "m"}, m);
    FAIL("expected EmptyScene");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyScene);
  }
}

namespace {

void check_structure(const SceneGraph& g) {
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto& e = g.edges[k];
    CHECK(e.origin != e.target);
    CHECK(e.origin < g.nodes.size());
    CHECK(e.target < g.nodes.size());
    if (k > 0) {
      const auto& p = g.edges[k - 1];
      CHECK(std::pair(p.origin, p.target) < std::pair(e.origin, e.target));
    }
    for (std::size_t c = kCertLon; c <= kCertInt; ++c) {
      CHECK(e.features[c] >= 0.0);
      CHECK(e.features[c] <= 1.0);
    }
    const bool lon_or_lat = e.features[kCertLon] > 0.0 || e.features[kCertLat] > 0.0;
    if (!lon_or_lat) {
      CHECK(e.features[kPathDistance] == 0.0);
      CHECK(e.features[kOriginCenterlineDistance] == 0.0);
      CHECK(e.features[kTargetCenterlineDistance] == 0.0);
    }
    if (e.features[kCertInt] == 0.0) {
      CHECK(e.features[kIntPathDistance] == 0.0);
      CHECK(e.features[kIntOriginCenterlineDistance] == 0.0);
      CHECK(e.features[kIntTargetCenterlineDistance] == 0.0);
    }
  }
}

}  // namespace

TEST_CASE("synthetic graphs satisfy the structural invariants") {
  for (auto t : kAllTemplates) {
    const auto map = generate_map(t);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto scene = generate_scene(t, map, seed);
      const auto g = build_scene_graph(scene, map);
      CHECK(g.nodes.size() == scene.participants.size());
      check_structure(g);
      CHECK(build_scene_graph(scene, map) == g);
    }
  }
}

TEST_CASE("participant order permutation yields an isomorphic graph") {
  Rng rng(19);
  for (auto t : kAllTemplates) {
    const auto map = generate_map(t);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto scene = generate_scene(t, map, 100 + seed);
      auto shuffled = scene;
      std::shuffle(shuffled.participants.begin(), shuffled.participants.end(), rng);
      const auto a = build_scene_graph(scene, map);
      const auto b = build_scene_graph(shuffled, map);
      REQUIRE(a.nodes.size() == b.nodes.size());
      std::map<std::string, std::size_t> index_b;
      for (std::size_t i = 0; i < b.nodes.size(); ++i) index_b[b.nodes[i].participant_id] = i;
      for (std::size_t i = 0; i < a.nodes.size(); ++i)
        CHECK(b.nodes[index_b[a.nodes[i].participant_id]].features == a.nodes[i].features);
      REQUIRE(a.edges.size() == b.edges.size());
      std::map<std::pair<std::size_t, std::size_t>, EdgeFeatures> edges_b;
      for (const auto& e : b.edges) edges_b[{e.origin, e.target}] = e.features;
      for (const auto& e : a.edges) {
        const auto key = std::pair(index_b[a.nodes[e.origin].participant_id], index_b[a.nodes[e.target].participant_id]);
        REQUIRE(edges_b.count(key) == 1);
        for (std::size_t f = 0; f < kEdgeFeatureWidth; ++f)
          CHECK(edges_b[key][f] == doctest::Approx(e.features[f]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("same-lane longitudinal path distances are antisymmetric") {
  LaneMap m("m", {Lane("a", {{0, 0}, {40, 3}, {90, -2}}, 4.0)}, {});
  Rng rng(8);
  std::uniform_real_distribution<double> x(0, 85), y(-0.5, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    TrafficScene s{"s", "l",
                   {{"p", {x(rng), y(rng)}, 3, 0, ObjectClass::Car}, {"q", {x(rng), y(rng)}, 3, 0, ObjectClass::Car}},
                   "m"};
    const auto g = build_scene_graph(s, m);
    if (g.edges.empty()) continue;
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0].features[kCertLon] == 1.0);
    CHECK(g.edges[0].features[kPathDistance] == doctest::Approx(-g.edges[1].features[kPathDistance]));
  }
}

TEST_CASE("graph-level features") {
  SceneGraph one{"s", "l", {{"a", {0, 1, 0, 0, 0}}}, {}};
  auto f = graph_level_features(one);
  CHECK(f.edge_count == 0);
  CHECK(f.car_count == 1);
  CHECK(f.mean_car_speed == 0);

  SceneGraph two{"s", "l", {{"a", {5, 1, 0, 0, 0}}, {"b", {7, 1, 0, 0, 0}}},
                 {{0, 1, {1, 0, 0, 12, 0, 0, 0, 0, 0}}, {1, 0, {1, 0, 0, -12, 0, 0, 0, 0, 0}}}};
  f = graph_level_features(two);
  CHECK(f.car_count == 2);
  CHECK(f.edge_count == 2);
  CHECK(f.mean_car_speed == 6.0);
  CHECK(f.e_lon == 1.0);
  CHECK(f.e_lat == 0.0);
  CHECK(graph_feature(f, "E_lon") == 1.0);
  CHECK(graph_feature(f, "V_car") == 2.0);
  CHECK(graph_feature(f, "mean_speed") == 6.0);
  CHECK_THROWS_AS(graph_feature(f, "nope"), Error);

  SceneGraph three{"s", "l", {{"a", {1, 1, 0, 0, 0}}, {"b", {1, 1, 0, 0, 0}}, {"c", {1, 0, 1, 0, 0}}}, {}};
  f = graph_level_features(three);
  CHECK(f.e_lon == 0.0);
  CHECK(f.e_lat == 0.0);
  CHECK(f.e_int == 0.0);
  CHECK(f.car_count == 2);
}
