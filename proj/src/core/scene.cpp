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

#include "core/scene.hpp"

#include <algorithm>
#include <numbers>
#include <unordered_set>

#include "core/error.hpp"

namespace ssg {

double wrap_angle(double radians) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(radians + std::numbers::pi, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  wrapped -= std::numbers::pi;
  // fmod can land exactly on +pi after the shift for inputs near -pi.
  if (wrapped >= std::numbers::pi) wrapped -= kTwoPi;
  return wrapped;
}

const char* to_string(ObjectClass c) {
  switch (c) {
    case ObjectClass::Car: return "car";
    case ObjectClass::Truck: return "truck";
    case ObjectClass::Pedestrian: return "pedestrian";
    case ObjectClass::Bike: return "bike";
  }
  return "car";
}

ObjectClass object_class_from_string(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "car") return ObjectClass::Car;
  if (lower == "truck" || lower == "truck_bus" || lower == "bus") return ObjectClass::Truck;
  if (lower == "pedestrian") return ObjectClass::Pedestrian;
  if (lower == "bike" || lower == "bicycle" || lower == "pedestrian/bicycle") return ObjectClass::Bike;
  fail(ErrorKind::Parse, "unknown object class '" + name + "'");
}

void validate(const TrafficParticipant& p) {
  require(std::isfinite(p.position.x) && std::isfinite(p.position.y), ErrorKind::InvariantViolation,
          "participant " + p.id + ": non-finite position");
  require(std::isfinite(p.speed) && p.speed >= 0.0, ErrorKind::InvariantViolation,
          "participant " + p.id + ": speed must be finite and >= 0");
  require(p.heading >= -std::numbers::pi && p.heading < std::numbers::pi, ErrorKind::InvariantViolation,
          "participant " + p.id + ": heading outside [-pi, pi)");
}

Lane::Lane(std::string id, std::vector<Vec2> centerline, double width)
    : id_(std::move(id)), centerline_(std::move(centerline)), width_(width) {
  require(centerline_.size() >= 2, ErrorKind::InvariantViolation, "lane " + id_ + ": needs >= 2 points");
  require(std::isfinite(width_) && width_ > 0.0, ErrorKind::InvariantViolation,
          "lane " + id_ + ": width must be > 0");
  cumulative_.reserve(centerline_.size());
  cumulative_.push_back(0.0);
  for (std::size_t i = 1; i < centerline_.size(); ++i) {
    const Vec2 a = centerline_[i - 1];
    const Vec2 b = centerline_[i];
    require(std::isfinite(b.x) && std::isfinite(b.y) && std::isfinite(a.x) && std::isfinite(a.y),
            ErrorKind::InvariantViolation, "lane " + id_ + ": non-finite point");
    require(!(a == b), ErrorKind::InvariantViolation, "lane " + id_ + ": consecutive points coincide");
    cumulative_.push_back(cumulative_.back() + norm(b - a));
  }
}

Vec2 Lane::point_at(double s) const {
  s = std::clamp(s, 0.0, length());
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t seg = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  if (seg + 1 >= centerline_.size()) seg = centerline_.size() - 2;
  const Vec2 a = centerline_[seg];
  const Vec2 b = centerline_[seg + 1];
  const double seg_len = cumulative_[seg + 1] - cumulative_[seg];
  const double t = (s - cumulative_[seg]) / seg_len;
  return a + t * (b - a);
}

Vec2 Lane::tangent_at(double s) const {
  s = std::clamp(s, 0.0, length());
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t seg = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  if (seg + 1 >= centerline_.size()) seg = centerline_.size() - 2;
  const Vec2 d = centerline_[seg + 1] - centerline_[seg];
  return (1.0 / norm(d)) * d;
}

double arclength_of(const Lane& lane) { return lane.length(); }

const char* to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::Successor: return "successor";
    case RelationKind::Parallel: return "parallel";
    case RelationKind::Intersecting: return "intersecting";
  }
  return "successor";
}

RelationKind relation_kind_from_string(const std::string& name) {
  if (name == "successor") return RelationKind::Successor;
  if (name == "parallel") return RelationKind::Parallel;
  if (name == "intersecting") return RelationKind::Intersecting;
  fail(ErrorKind::Parse, "unknown relation kind '" + name + "'");
}

LaneMap::LaneMap(std::string id, std::vector<Lane> lanes, std::vector<LaneRelation> relations)
    : id_(std::move(id)), lanes_(std::move(lanes)), relations_(std::move(relations)) {
  for (std::size_t i = 0; i < lanes_.size(); ++i) {
    const bool inserted = index_.emplace(lanes_[i].id(), i).second;
    require(inserted, ErrorKind::InvariantViolation, "map " + id_ + ": duplicate lane id " + lanes_[i].id());
  }
  successors_.assign(lanes_.size(), {});
  for (const auto& rel : relations_) {
    auto ia = lane_index(rel.a);
    auto ib = lane_index(rel.b);
    require(ia && ib, ErrorKind::InvariantViolation,
            "map " + id_ + ": relation references unknown lane " + (ia ? rel.b : rel.a));
    require(*ia != *ib, ErrorKind::InvariantViolation, "map " + id_ + ": self relation on lane " + rel.a);
    const bool crossing = rel.kind == RelationKind::Intersecting;
    require(rel.intersection_arclen_a.has_value() == crossing && rel.intersection_arclen_b.has_value() == crossing,
            ErrorKind::InvariantViolation,
            "map " + id_ + ": crossing arclengths must be present exactly for intersecting relations");
    if (crossing) {
      require(*rel.intersection_arclen_a >= 0.0 && *rel.intersection_arclen_a <= lanes_[*ia].length() &&
                  *rel.intersection_arclen_b >= 0.0 && *rel.intersection_arclen_b <= lanes_[*ib].length(),
              ErrorKind::InvariantViolation,
              "map " + id_ + ": crossing arclength outside lane " + rel.a + "/" + rel.b);
    }
    if (rel.kind == RelationKind::Successor) successors_[*ia].push_back(*ib);
  }
  // Successor graph must be acyclic: Kahn's algorithm.
  std::vector<std::size_t> indegree(lanes_.size(), 0);
  for (const auto& next : successors_)
    for (std::size_t j : next) ++indegree[j];
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < lanes_.size(); ++i)
    if (indegree[i] == 0) ready.push_back(i);
  std::size_t visited = 0;
  while (!ready.empty()) {
    const std::size_t i = ready.back();
    ready.pop_back();
    ++visited;
    for (std::size_t j : successors_[i])
      if (--indegree[j] == 0) ready.push_back(j);
  }
  require(visited == lanes_.size(), ErrorKind::InvariantViolation, "map " + id_ + ": successor chain contains a cycle");
}

std::optional<std::size_t> LaneMap::lane_index(const std::string& lane_id) const {
  auto it = index_.find(lane_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void validate(const TrafficScene& scene) {
  require(!scene.participants.empty(), ErrorKind::EmptyScene, "scene " + scene.scene_id + " has no participants");
  std::unordered_set<std::string> seen;
  for (const auto& p : scene.participants) {
    validate(p);
    require(seen.insert(p.id).second, ErrorKind::InvariantViolation,
            "scene " + scene.scene_id + ": duplicate participant id " + p.id);
  }
}

}  // namespace ssg
