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

#include <cstdint>

#include "core/scene.hpp"

namespace ssg {

struct AugmentParams {
  double p_select = 0.5;
  double sigma_pos = 1.0;    // m, along heading
  double sigma_speed = 0.5;  // m/s
  std::uint64_t seed = 0;
};

void validate(const AugmentParams& params);

// Perturbs randomly selected participants' position (along heading) and speed.
// The scene is otherwise untouched; the result is a pure function of (scene, params).
TrafficScene augment_scene(const TrafficScene& scene, const AugmentParams& params);

// Seed for one scene's augmentation, independent of processing order.
std::uint64_t scene_augment_seed(std::uint64_t global_seed, const std::string& scene_id, std::uint64_t round = 0);

}  // namespace ssg
