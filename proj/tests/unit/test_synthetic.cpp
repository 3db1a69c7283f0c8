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

#include <array>
#include <cmath>

#include "common/errors.hpp"
#include "core/projection.hpp"
#include "core/scene_graph.hpp"
#include "core/synthetic.hpp"

using namespace ssg;
using testing::error_kind;

namespace {

std::array<double, 6> feature_vector(const SceneGraph& g) {
  const auto f = graph_level_features(g);
  return {f.e_lon, f.e_lat, f.e_int, f.edge_count, f.car_count, f.mean_car_speed};
}

}  // namespace

TEST_CASE("canonical maps") {
  const auto straight = generate_map(ScenarioTemplate::StraightFollowing);
  CHECK(straight.lanes().size() == 1);
  CHECK(straight.relations().empty());
  CHECK(straight.id() == "StraightFollowing");

  const auto merge = generate_map(ScenarioTemplate::MergeLane);
  REQUIRE(merge.lanes().size() == 2);
  REQUIRE(merge.relations().size() == 2);
  int parallel = 0, successor = 0;
  for (const auto& r : merge.relations()) {
    parallel += r.kind == RelationKind::Parallel;
    successor += r.kind == RelationKind::Successor;
  }
  CHECK(parallel == 1);
  CHECK(successor == 1);

  const auto cross = generate_map(ScenarioTemplate::FourWayIntersection);
  CHECK(cross.lanes().size() == 4);
  REQUIRE(cross.relations().size() == 4);
  for (const auto& r : cross.relations()) {
    CHECK(r.kind == RelationKind::Intersecting);
    const auto& a = cross.lane(*cross.lane_index(r.a));
    const auto& b = cross.lane(*cross.lane_index(r.b));
    // The stored arclengths name the same physical point on both lanes.
    const Vec2 pa = a.point_at(*r.intersection_arclen_a);
    const Vec2 pb = b.point_at(*r.intersection_arclen_b);
    CHECK(norm(pa - pb) < 1e-9);
    CHECK(std::abs(*r.intersection_arclen_a - 0.5 * a.length()) <= 0.5 * a.width() * 2.0);
  }

  const auto mixed = generate_map(ScenarioTemplate::Mixed);
  CHECK(mixed.lanes().size() == 6);
  CHECK(generate_map(ScenarioTemplate::QueueJam).relations().size() == 1);
}

TEST_CASE("generated scenes satisfy the scene invariants and template ranges") {
  const SyntheticConfig cfg;
  for (auto t : kAllTemplates) {
    const auto map = generate_map(t, cfg);
    const auto& r = ranges_for(cfg, t);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto s = generate_scene(t, map, seed, cfg);
      CHECK_NOTHROW(validate(s));
      CHECK(s.location_label == to_string(t));
      CHECK(s.map_ref == map.id());
      std::size_t vehicles = 0;
      for (const auto& p : s.participants) {
        if (p.object_class == ObjectClass::Pedestrian) continue;
        ++vehicles;
        CHECK(p.speed >= r.min_speed);
        CHECK(p.speed <= r.max_speed);
      }
      CHECK(vehicles >= static_cast<std::size_t>(r.min_count));
      CHECK(vehicles <= static_cast<std::size_t>(r.max_count));
      CHECK(!build_scene_graph(s, map).nodes.empty());
    }
  }
}

TEST_CASE("queue scenes are slow and longitudinally connected") {
  const auto map = generate_map(ScenarioTemplate::QueueJam);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto f = graph_level_features(build_scene_graph(generate_scene(ScenarioTemplate::QueueJam, map, seed), map));
    CHECK(f.mean_car_speed < 1.5);
    CHECK(f.e_lon > 0.0);
  }
}

TEST_CASE("one car per intersection arm gives crossing relations only") {
  const auto map = generate_map(ScenarioTemplate::FourWayIntersection);
  TrafficScene s{"x", "FourWayIntersection", {}, map.id()};
  for (const auto& lane : map.lanes()) {
    const Vec2 p = lane.point_at(40.0);
    const Vec2 t = lane.tangent_at(40.0);
    s.participants.push_back({lane.id(), p, 5.0, wrap_angle(std::atan2(t.y, t.x)), ObjectClass::Car});
  }
  const auto g = build_scene_graph(s, map);
  CHECK(!g.edges.empty());
  for (const auto& e : g.edges) {
    CHECK(e.features[kCertInt] > 0.0);
    CHECK(e.features[kCertLon] == 0.0);
    CHECK(e.features[kCertLat] == 0.0);
  }
}

TEST_CASE("generation is deterministic") {
  const auto map = generate_map(ScenarioTemplate::Mixed);
  CHECK(generate_scene(ScenarioTemplate::Mixed, map, 7) == generate_scene(ScenarioTemplate::Mixed, map, 7));
  CHECK(!(generate_scene(ScenarioTemplate::Mixed, map, 7) == generate_scene(ScenarioTemplate::Mixed, map, 8)));
  const std::map<ScenarioTemplate, int> counts{{ScenarioTemplate::QueueJam, 6}, {ScenarioTemplate::MergeLane, 6}};
  const auto a = generate_dataset(counts, 3);
  const auto b = generate_dataset(counts, 3);
  CHECK(a.scenes == b.scenes);
  CHECK(a.maps.size() == 2);
  CHECK(a.scenes.size() == 12);
  CHECK(error_kind([] { generate_dataset({{ScenarioTemplate::QueueJam, 9}}, 1); }) == ErrorKind::TooFewSamples);
  CHECK(error_kind([&] { generate_scene(ScenarioTemplate::QueueJam, map, 1); }) == ErrorKind::InvariantViolation);
  CHECK(scenario_template_from_string("QueueJam") == ScenarioTemplate::QueueJam);
  CHECK(error_kind([] { scenario_template_from_string("Roundabout"); }) == ErrorKind::Parse);
}

TEST_CASE("templates are recoverable from graph-level features by nearest centroid") {
  std::map<ScenarioTemplate, int> counts;
  for (auto t : kAllTemplates) counts[t] = 100;
  const auto fit = generate_dataset(counts, 1001);
  const auto test = generate_dataset(counts, 2002);

  std::map<std::string, std::array<double, 6>> centroid;
  std::map<std::string, int> n;
  std::array<double, 6> mean{}, sq{};
  std::vector<std::array<double, 6>> fit_features;
  for (const auto& s : fit.scenes) {
    const auto v = feature_vector(build_scene_graph(s, fit.maps.at(s.map_ref)));
    fit_features.push_back(v);
    for (std::size_t k = 0; k < 6; ++k) {
      mean[k] += v[k];
      sq[k] += v[k] * v[k];
    }
  }
  std::array<double, 6> scale{};
  for (std::size_t k = 0; k < 6; ++k) {
    mean[k] /= double(fit.scenes.size());
    scale[k] = std::sqrt(std::max(sq[k] / double(fit.scenes.size()) - mean[k] * mean[k], 1e-12));
  }
  for (std::size_t i = 0; i < fit.scenes.size(); ++i) {
    auto& c = centroid[fit.scenes[i].location_label];
    for (std::size_t k = 0; k < 6; ++k) c[k] += (fit_features[i][k] - mean[k]) / scale[k];
    ++n[fit.scenes[i].location_label];
  }
  for (auto& [label, c] : centroid)
    for (auto& v : c) v /= n[label];

  int correct = 0;
  for (const auto& s : test.scenes) {
    const auto v = feature_vector(build_scene_graph(s, test.maps.at(s.map_ref)));
    std::string best;
    double best_d = INFINITY;
    for (const auto& [label, c] : centroid) {
      double d = 0;
      for (std::size_t k = 0; k < 6; ++k) d += std::pow((v[k] - mean[k]) / scale[k] - c[k], 2);
      if (d < best_d) {
        best_d = d;
        best = label;
      }
    }
    correct += best == s.location_label;
  }
  const double accuracy = correct / double(test.scenes.size());
  MESSAGE("nearest-centroid accuracy " << accuracy);
  CHECK(accuracy >= 0.7);
}
