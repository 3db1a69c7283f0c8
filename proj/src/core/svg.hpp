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

#include <Eigen/Dense>

namespace ssg::svg {

struct ScatterOptions {
  std::string title;
  std::string x_label = "component 1";
  std::string y_label = "component 2";
  std::string color_label;
  int width = 640;
  int height = 520;
  double point_radius = 3.0;
};

// Continuous colouring on a blue-red-yellow ramp, with a colour bar.
std::string scatter_continuous(const Eigen::MatrixXd& points, const std::vector<double>& values,
                               const ScatterOptions& options);

// Categorical colouring with a legend.
std::string scatter_categorical(const Eigen::MatrixXd& points, const std::vector<int>& labels,
                                const ScatterOptions& options);

// RGB hex string for t in [0, 1].
std::string ramp_color(double t);

}  // namespace ssg::svg
