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

#include "core/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "core/error.hpp"
#include "core/random.hpp"

namespace ssg {

const char* to_string(ScenarioTemplate t) {
  switch (t) {
    case ScenarioTemplate::StraightFollowing: return "StraightFollowing";
    case ScenarioTemplate::MergeLane: return "MergeLane";
    case ScenarioTemplate::FourWayIntersection: return "FourWayIntersection";
    case ScenarioTemplate::QueueJam: return "QueueJam";
    case ScenarioTemplate::Mixed: return "Mixed";
  }
  return "StraightFollowing";
}

ScenarioTemplate scenario_template_from_string(const std::string& name) {
  for (auto t : kAllTemplates)
    if (name == to_string(t)) return t;
  fail(ErrorKind::Parse, "unknown scenario template '" + name + "'");
}

const TemplateRanges& ranges_for(const SyntheticConfig& config, ScenarioTemplate t) {
  switch (t) {
    case ScenarioTemplate::StraightFollowing: return config.straight;
    case ScenarioTemplate::MergeLane: return config.merge;
    case ScenarioTemplate::FourWayIntersection: return config.intersection;
    case ScenarioTemplate::QueueJam: return config.queue;
    case ScenarioTemplate::Mixed: return config.mixed;
  }
  return config.straight;
}

namespace {

constexpr double kArm = 60.0;     // intersection arm length from the center
constexpr double kOffset = 3.5;   // lateral offset of each directed intersection lane
constexpr double kMixedShift = 400.0;

struct MapParts {
  std::vector<Lane> lanes;
  std::vector<LaneRelation> relations;
};

MapParts merge_parts(double width, const std::string& prefix, double dx) {
  MapParts p;
  p.lanes.emplace_back(prefix + "main", std::vector<Vec2>{{dx, 0.0}, {dx + 200.0, 0.0}}, width);
  p.lanes.emplace_back(prefix + "ramp", std::vector<Vec2>{{dx, -width}, {dx + 120.0, -width}}, width);
  p.relations.push_back({RelationKind::Parallel, prefix + "main", prefix + "ramp", std::nullopt, std::nullopt});
  p.relations.push_back({RelationKind::Successor, prefix + "ramp", prefix + "main", std::nullopt, std::nullopt});
  return p;
}

MapParts intersection_parts(double width, const std::string& prefix) {
  MapParts p;
  p.lanes.emplace_back(prefix + "eb", std::vector<Vec2>{{-kArm, -kOffset}, {kArm, -kOffset}}, width);
  p.lanes.emplace_back(prefix + "nb", std::vector<Vec2>{{kOffset, -kArm}, {kOffset, kArm}}, width);
  p.lanes.emplace_back(prefix + "wb", std::vector<Vec2>{{kArm, kOffset}, {-kArm, kOffset}}, width);
  p.lanes.emplace_back(prefix + "sb", std::vector<Vec2>{{-kOffset, kArm}, {-kOffset, -kArm}}, width);
  // Each directed lane meets both crossing lanes, kOffset either side of its midpoint.
  const double near = kArm - kOffset, far = kArm + kOffset;
  auto cross = [&](const char* a, const char* b, double sa, double sb) {
    p.relations.push_back({RelationKind::Intersecting, prefix + a, prefix + b, sa, sb});
  };
  cross("eb", "nb", far, near);
  cross("eb", "sb", near, far);
  cross("wb", "nb", near, far);
  cross("wb", "sb", far, near);
  return p;
}

LaneMap assemble(const std::string& id, std::vector<MapParts> parts) {
  std::vector<Lane> lanes;
  std::vector<LaneRelation> relations;
  for (auto& p : parts) {
    for (auto& l : p.lanes) lanes.push_back(std::move(l));
    for (auto& r : p.relations) relations.push_back(std::move(r));
  }
  return LaneMap(id, std::move(lanes), std::move(relations));
}

class SceneBuilder {
 public:
  SceneBuilder(const LaneMap& map, const SyntheticConfig& config, std::uint64_t seed)
      : map_(map), config_(config), rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }

  void add_vehicle(const std::string& lane_id, double s, const TemplateRanges& r) {
    const Lane& lane = map_.lane(*map_.lane_index(lane_id));
    const Vec2 center = lane.point_at(s);
    const Vec2 t = lane.tangent_at(s);
    const double offset = std::clamp(std::normal_distribution<double>(0.0, config_.lateral_jitter)(rng_),
                                     -0.25 * config_.lane_width, 0.25 * config_.lane_width);
    TrafficParticipant p;
    p.id = std::to_string(participants_.size() + 1);
    p.position = center + offset * Vec2{-t.y, t.x};
    p.heading = wrap_angle(std::atan2(t.y, t.x));
    p.speed = uniform(r.min_speed, r.max_speed);
    p.object_class = chance(config_.truck_fraction) ? ObjectClass::Truck : ObjectClass::Car;
    participants_.push_back(std::move(p));
  }

  void add_pedestrian(Vec2 position) {
    TrafficParticipant p;
    p.id = std::to_string(participants_.size() + 1);
    p.position = position;
    p.heading = wrap_angle(uniform(-3.14159, 3.14159));
    p.speed = uniform(0.5, 1.8);
    p.object_class = ObjectClass::Pedestrian;
    participants_.push_back(std::move(p));
  }

  double spacing(const TemplateRanges& r) { return config_.vehicle_length + uniform(r.min_gap, r.max_gap); }

  // Places up to `count` vehicles on `lane_id`, the lead at `lead_s`, followers behind it.
  int fill_backward(const std::string& lane_id, double lead_s, int count, const TemplateRanges& r, double min_s) {
    int placed = 0;
    double s = lead_s;
    while (placed < count && s >= min_s) {
      add_vehicle(lane_id, s, r);
      ++placed;
      s -= spacing(r);
    }
    return placed;
  }

  std::vector<TrafficParticipant> take() { return std::move(participants_); }
  std::size_t size() const { return participants_.size(); }

 private:
  const LaneMap& map_;
  const SyntheticConfig& config_;
  Rng rng_;
  std::vector<TrafficParticipant> participants_;
};

void place_straight(SceneBuilder& b, const TemplateRanges& r) {
  const int n = b.uniform_int(r.min_count, r.max_count);
  double s = b.uniform(20.0, 60.0);
  for (int i = 0; i < n && s < 295.0; ++i) {
    b.add_vehicle("lane", s, r);
    s += b.spacing(r);
  }
}

void place_queue(SceneBuilder& b, const TemplateRanges& r) {
  // The queue runs along approach -> exit; positions are chain arclengths.
  const int n = b.uniform_int(r.min_count, r.max_count);
  double s = b.uniform(160.0, 190.0);
  for (int i = 0; i < n && s > 2.5; ++i) {
    if (s >= 100.0)
      b.add_vehicle("exit", s - 100.0, r);
    else
      b.add_vehicle("approach", s, r);
    s -= b.spacing(r);
  }
}

void place_merge(SceneBuilder& b, const TemplateRanges& r, int n, const std::string& prefix) {
  int on_ramp = 0;
  for (int i = 0; i < n; ++i)
    if (b.chance(0.4)) ++on_ramp;
  if (n >= 2 && on_ramp == 0) on_ramp = 1;
  if (on_ramp == n && n >= 2) on_ramp = n - 1;
  b.fill_backward(prefix + "main", b.uniform(80.0, 180.0), n - on_ramp, r, 3.0);
  b.fill_backward(prefix + "ramp", b.uniform(60.0, 115.0), on_ramp, r, 3.0);
}

void place_intersection(SceneBuilder& b, const TemplateRanges& r, int n, const std::string& prefix,
                        double pedestrian_probability) {
  static const char* kArms[] = {"eb", "nb", "wb", "sb"};
  std::array<int, 4> per_arm{};
  const int start = b.uniform_int(0, 3);
  for (int i = 0; i < n; ++i) ++per_arm[static_cast<std::size_t>((start + i) % 4)];
  const double crossing = kArm - kOffset;
  for (std::size_t a = 0; a < 4; ++a) {
    if (per_arm[a] == 0) continue;
    b.fill_backward(prefix + kArms[a], crossing - b.uniform(10.0, 25.0), per_arm[a], r, 2.5);
  }
  if (b.chance(pedestrian_probability)) {
    const double sx = b.chance(0.5) ? 1.0 : -1.0;
    const double sy = b.chance(0.5) ? 1.0 : -1.0;
    b.add_pedestrian({sx * b.uniform(11.0, 14.0), sy * b.uniform(11.0, 14.0)});
  }
}

}  // namespace

LaneMap generate_map(ScenarioTemplate t, const SyntheticConfig& config) {
  const double w = config.lane_width;
  const std::string id = to_string(t);
  switch (t) {
    case ScenarioTemplate::StraightFollowing:
      return LaneMap(id, {Lane("lane", {{0.0, 0.0}, {300.0, 0.0}}, w)}, {});
    case ScenarioTemplate::MergeLane:
      return assemble(id, {merge_parts(w, "", 0.0)});
    case ScenarioTemplate::FourWayIntersection:
      return assemble(id, {intersection_parts(w, "")});
    case ScenarioTemplate::QueueJam:
      return LaneMap(id,
                     {Lane("approach", {{0.0, 0.0}, {100.0, 0.0}}, w), Lane("exit", {{100.0, 0.0}, {200.0, 0.0}}, w)},
                     {{RelationKind::Successor, "approach", "exit", std::nullopt, std::nullopt}});
    case ScenarioTemplate::Mixed:
      return assemble(id, {intersection_parts(w, "x_"), merge_parts(w, "m_", kMixedShift)});
  }
  fail(ErrorKind::InvariantViolation, "unhandled template");
}

TrafficScene generate_scene(ScenarioTemplate t, const LaneMap& map, std::uint64_t seed,
                            const SyntheticConfig& config) {
  require(map.id() == to_string(t), ErrorKind::InvariantViolation,
          std::string("map ") + map.id() + " does not belong to template " + to_string(t));
  const TemplateRanges& r = ranges_for(config, t);
  require(r.min_count >= 1 && r.max_count >= r.min_count, ErrorKind::InvariantViolation,
          std::string("invalid participant count range for ") + to_string(t));
  require(r.min_speed >= 0.0 && r.max_speed >= r.min_speed, ErrorKind::InvariantViolation,
          std::string("invalid speed range for ") + to_string(t));
  SceneBuilder b(map, config, seed);
  switch (t) {
    case ScenarioTemplate::StraightFollowing:
      place_straight(b, r);
      break;
    case ScenarioTemplate::QueueJam:
      place_queue(b, r);
      break;
    case ScenarioTemplate::MergeLane:
      place_merge(b, r, b.uniform_int(r.min_count, r.max_count), "");
      break;
    case ScenarioTemplate::FourWayIntersection:
      place_intersection(b, r, b.uniform_int(r.min_count, r.max_count), "", config.pedestrian_probability);
      break;
    case ScenarioTemplate::Mixed: {
      const int n = b.uniform_int(r.min_count, r.max_count);
      const int at_crossing = std::max(1, n / 2);
      place_intersection(b, r, at_crossing, "x_", 0.0);
      if (n - at_crossing > 0) place_merge(b, r, n - at_crossing, "m_");
      break;
    }
  }
  TrafficScene scene;
  char id[64];
  std::snprintf(id, sizeof id, "%s-%016llx", to_string(t), static_cast<unsigned long long>(seed));
  scene.scene_id = id;
  scene.location_label = to_string(t);
  scene.map_ref = map.id();
  scene.participants = b.take();
  return scene;
}

SyntheticDataset generate_dataset(const std::map<ScenarioTemplate, int>& counts, std::uint64_t seed,
                                  const SyntheticConfig& config) {
  int total = 0;
  for (const auto& [t, c] : counts) {
    require(c >= 0, ErrorKind::InvariantViolation, "template counts must be >= 0");
    total += c;
  }
  require(total >= 10, ErrorKind::TooFewSamples, "a synthetic dataset needs at least 10 scenes");
  SyntheticDataset ds;
  for (auto t : kAllTemplates) {
    auto it = counts.find(t);
    if (it == counts.end() || it->second == 0) continue;
    const LaneMap& map = ds.maps.emplace(to_string(t), generate_map(t, config)).first->second;
    for (int i = 0; i < it->second; ++i) {
      char id[64];
      std::snprintf(id, sizeof id, "%s-%05d", to_string(t), i);
      TrafficScene scene = generate_scene(t, map, derive_seed(seed, id), config);
      scene.scene_id = id;
      ds.scenes.push_back(std::move(scene));
    }
  }
  return ds;
}

}  // namespace ssg
