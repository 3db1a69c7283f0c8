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

#include "core/augment.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/random.hpp"

namespace ssg {

void validate(const AugmentParams& params) {
  require(params.p_select >= 0.0 && params.p_select <= 1.0, ErrorKind::InvariantViolation,
          "augmentation p_select must lie in [0, 1]");
  require(params.sigma_pos >= 0.0 && params.sigma_speed >= 0.0, ErrorKind::InvariantViolation,
          "augmentation sigmas must be >= 0");
}

TrafficScene augment_scene(const TrafficScene& scene, const AugmentParams& params) {
  validate(params);
  TrafficScene out = scene;
  Rng rng(params.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::normal_distribution<double> unit(0.0, 1.0);
  for (auto& p : out.participants) {
    if (!(coin(rng) < params.p_select)) continue;
    const double shift = params.sigma_pos * unit(rng);
    const double dv = params.sigma_speed * unit(rng);
    p.position.x += shift * std::cos(p.heading);
    p.position.y += shift * std::sin(p.heading);
    p.speed = std::max(0.0, p.speed + dv);
  }
  return out;
}

std::uint64_t scene_augment_seed(std::uint64_t global_seed, const std::string& scene_id, std::uint64_t round) {
  return derive_seed(derive_seed(global_seed, scene_id), round);
}

}  // namespace ssg
