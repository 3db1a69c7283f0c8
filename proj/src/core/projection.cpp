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

#include "core/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace ssg {

FrenetPoint project_point(const Lane& lane, Vec2 p) {
  const auto& pts = lane.centerline();
  const auto& cum = lane.cumulative();
  double best_dist2 = std::numeric_limits<double>::infinity();
  FrenetPoint best;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec2 a = pts[i];
    const Vec2 ab = pts[i + 1] - a;
    const Vec2 ap = p - a;
    const double seg_len2 = dot(ab, ab);
    const double t = std::clamp(dot(ap, ab) / seg_len2, 0.0, 1.0);
    const Vec2 foot = a + t * ab;
    const Vec2 offset = p - foot;
    const double dist2 = dot(offset, offset);
    if (dist2 < best_dist2) {
      best_dist2 = dist2;
      const double side = cross(ab, ap);
      const double dist = std::sqrt(dist2);
      best.s = cum[i] + t * (cum[i + 1] - cum[i]);
      best.d = side < 0.0 ? -dist : dist;
    }
  }
  return best;
}

double certainty_kernel(double d, double lane_width) {
  require(lane_width > 0.0, ErrorKind::InvariantViolation, "certainty_kernel: lane width must be > 0");
  const double sigma = lane_width / 4.0;
  return std::exp(-(d * d) / (2.0 * sigma * sigma));
}

std::vector<ProjectionIdentity> candidate_identities(const TrafficParticipant& participant, const LaneMap& map,
                                                     const ProjectionOptions& options) {
  if (options.gate_m) {
    require(*options.gate_m > 0.0, ErrorKind::InvariantViolation, "projection gate must be > 0");
  } else {
    require(options.gate_width_factor > 0.0, ErrorKind::InvariantViolation, "projection gate factor must be > 0");
  }
  std::vector<ProjectionIdentity> out;
  double total = 0.0;
  for (std::size_t i = 0; i < map.lanes().size(); ++i) {
    const Lane& lane = map.lane(i);
    const double gate = options.gate_m ? *options.gate_m : options.gate_width_factor * lane.width();
    const FrenetPoint fp = project_point(lane, participant.position);
    if (std::abs(fp.d) > gate) continue;
    ProjectionIdentity id;
    id.participant_id = participant.id;
    id.lane_id = lane.id();
    id.lane_index = i;
    id.s = fp.s;
    id.d = fp.d;
    id.certainty = certainty_kernel(fp.d, lane.width());
    total += id.certainty;
    out.push_back(std::move(id));
  }
  if (total > 0.0) {
    for (auto& id : out) id.certainty /= total;
  } else if (!out.empty()) {
    // Every kernel value underflowed; fall back to a uniform split.
    for (auto& id : out) id.certainty = 1.0 / static_cast<double>(out.size());
  }
  return out;
}

}  // namespace ssg
