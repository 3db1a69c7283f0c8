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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/scene.hpp"

namespace ssg {

enum class ScenarioTemplate { StraightFollowing, MergeLane, FourWayIntersection, QueueJam, Mixed };

inline constexpr std::array<ScenarioTemplate, 5> kAllTemplates = {
    ScenarioTemplate::StraightFollowing, ScenarioTemplate::MergeLane, ScenarioTemplate::FourWayIntersection,
    ScenarioTemplate::QueueJam, ScenarioTemplate::Mixed};

const char* to_string(ScenarioTemplate t);
ScenarioTemplate scenario_template_from_string(const std::string& name);

struct TemplateRanges {
  int min_count = 1;
  int max_count = 1;
  double min_speed = 0.0;  // m/s
  double max_speed = 0.0;
  double min_gap = 0.0;    // bumper-to-bumper, m
  double max_gap = 0.0;
};

struct SyntheticConfig {
  double lane_width = 3.5;
  double vehicle_length = 4.5;
  double lateral_jitter = 0.3;        // std of the lateral offset from the centerline, m
  double truck_fraction = 0.1;
  double pedestrian_probability = 0.2;  // chance of one off-lane pedestrian at an intersection
  TemplateRanges straight{2, 6, 5.0, 11.0, 10.0, 30.0};
  TemplateRanges merge{2, 8, 3.0, 9.0, 8.0, 25.0};
  TemplateRanges intersection{2, 8, 2.0, 8.0, 5.0, 20.0};
  TemplateRanges queue{5, 15, 0.0, 1.0, 2.0, 6.0};
  TemplateRanges mixed{2, 8, 2.0, 9.0, 6.0, 25.0};
};

const TemplateRanges& ranges_for(const SyntheticConfig& config, ScenarioTemplate t);

// Canonical map for a template; the map id is the template name.
LaneMap generate_map(ScenarioTemplate t, const SyntheticConfig& config = {});

TrafficScene generate_scene(ScenarioTemplate t, const LaneMap& map, std::uint64_t seed,
                            const SyntheticConfig& config = {});

struct SyntheticDataset {
  std::map<std::string, LaneMap> maps;  // by map id
  std::vector<TrafficScene> scenes;
};

SyntheticDataset generate_dataset(const std::map<ScenarioTemplate, int>& counts, std::uint64_t seed,
                                  const SyntheticConfig& config = {});

}  // namespace ssg
