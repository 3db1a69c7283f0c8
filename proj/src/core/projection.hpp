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

#include <optional>
#include <string>
#include <vector>

#include "core/scene.hpp"

namespace ssg {

// A participant's hypothesized assignment to one lane, in Frenet coordinates.
struct ProjectionIdentity {
  std::string participant_id;
  std::string lane_id;
  std::size_t lane_index = 0;
  double s = 0.0;          // arclength along the centerline
  double d = 0.0;          // signed lateral offset, left of travel direction positive
  double certainty = 0.0;  // in [0, 1]
};

struct FrenetPoint {
  double s = 0.0;
  double d = 0.0;
};

// Closest point on the polyline; ties resolve to the smallest arclength.
FrenetPoint project_point(const Lane& lane, Vec2 p);

// Gaussian in lateral offset with sigma = lane_width / 4.
double certainty_kernel(double d, double lane_width);

struct ProjectionOptions {
  // Absolute gate in meters; when unset each lane uses gate_width_factor * width.
  std::optional<double> gate_m;
  double gate_width_factor = 1.5;
};

// One identity per lane within the gate, certainties normalized to sum to 1.
// Lanes are visited in map order, so the output order is deterministic.
std::vector<ProjectionIdentity> candidate_identities(const TrafficParticipant& participant, const LaneMap& map,
                                                     const ProjectionOptions& options = {});

}  // namespace ssg
