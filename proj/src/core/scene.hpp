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

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ssg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Wraps an angle into [-pi, pi).
double wrap_angle(double radians);

enum class ObjectClass { Car, Truck, Pedestrian, Bike };

inline constexpr std::size_t kObjectClassCount = 4;

const char* to_string(ObjectClass c);
ObjectClass object_class_from_string(const std::string& name);

struct TrafficParticipant {
  std::string id;
  Vec2 position;
  double speed = 0.0;    // m/s, norm of the velocity vector
  double heading = 0.0;  // rad, geometry only
  ObjectClass object_class = ObjectClass::Car;

  friend bool operator==(const TrafficParticipant&, const TrafficParticipant&) = default;
};

// Throws InvariantViolation when speed/heading are out of range.
void validate(const TrafficParticipant& p);

class Lane {
 public:
  Lane(std::string id, std::vector<Vec2> centerline, double width);

  const std::string& id() const { return id_; }
  const std::vector<Vec2>& centerline() const { return centerline_; }
  double width() const { return width_; }
  double length() const { return cumulative_.back(); }
  // Arclength at the start of each polyline vertex.
  const std::vector<double>& cumulative() const { return cumulative_; }
  Vec2 point_at(double s) const;
  Vec2 tangent_at(double s) const;

  friend bool operator==(const Lane& a, const Lane& b) {
    return a.id_ == b.id_ && a.centerline_ == b.centerline_ && a.width_ == b.width_;
  }

 private:
  std::string id_;
  std::vector<Vec2> centerline_;
  double width_;
  std::vector<double> cumulative_;
};

double arclength_of(const Lane& lane);

enum class RelationKind { Successor, Parallel, Intersecting };

const char* to_string(RelationKind kind);
RelationKind relation_kind_from_string(const std::string& name);

struct LaneRelation {
  RelationKind kind = RelationKind::Successor;
  std::string a;
  std::string b;
  // Crossing arclengths, present only for Intersecting relations.
  std::optional<double> intersection_arclen_a;
  std::optional<double> intersection_arclen_b;

  friend bool operator==(const LaneRelation&, const LaneRelation&) = default;
};

class LaneMap {
 public:
  LaneMap() = default;
  LaneMap(std::string id, std::vector<Lane> lanes, std::vector<LaneRelation> relations);

  const std::string& id() const { return id_; }
  const std::vector<Lane>& lanes() const { return lanes_; }
  const std::vector<LaneRelation>& relations() const { return relations_; }

  std::optional<std::size_t> lane_index(const std::string& lane_id) const;
  const Lane& lane(std::size_t index) const { return lanes_[index]; }
  // Direct successors of a lane, by lane index.
  const std::vector<std::size_t>& successors(std::size_t index) const { return successors_[index]; }

  friend bool operator==(const LaneMap& a, const LaneMap& b) {
    return a.id_ == b.id_ && a.lanes_ == b.lanes_ && a.relations_ == b.relations_;
  }

 private:
  std::string id_;
  std::vector<Lane> lanes_;
  std::vector<LaneRelation> relations_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> successors_;
};

struct TrafficScene {
  std::string scene_id;
  std::string location_label;
  std::vector<TrafficParticipant> participants;
  std::string map_ref;

  friend bool operator==(const TrafficScene&, const TrafficScene&) = default;
};

// Checks participant invariants and id uniqueness. Empty scenes are reported
// as EmptyScene so callers can distinguish them from malformed participants.
void validate(const TrafficScene& scene);

}  // namespace ssg
