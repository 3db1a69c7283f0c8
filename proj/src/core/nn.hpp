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

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "core/random.hpp"

namespace ssg::nn {

// Rows are samples, columns are features.
using Matrix = Eigen::MatrixXd;

inline double leaky_relu(double x, double slope) { return x >= 0.0 ? x : slope * x; }

struct Dense {
  Matrix weight;  // out x in
  Matrix bias;    // 1 x out
};

struct MlpSpec {
  std::vector<int> widths;  // input, hidden..., output
  double leaky_slope = 0.01;
  double dropout = 0.0;     // applied after each hidden activation in training mode
};

void validate(const MlpSpec& spec);

class Mlp {
 public:
  Mlp() = default;
  // All parameters zero.
  explicit Mlp(MlpSpec spec);
  // Uniform in +-sqrt(6 / (fan_in + fan_out)), zero bias.
  static Mlp glorot(MlpSpec spec, Rng& rng);

  const MlpSpec& spec() const { return spec_; }
  int input_width() const { return spec_.widths.front(); }
  int output_width() const { return spec_.widths.back(); }
  std::vector<Dense>& layers() { return layers_; }
  const std::vector<Dense>& layers() const { return layers_; }

  // Visits every tensor as (name, matrix) in a fixed order.
  void for_each_tensor(const std::string& prefix, const std::function<void(const std::string&, Matrix&)>& fn);
  void for_each_tensor(const std::string& prefix,
                       const std::function<void(const std::string&, const Matrix&)>& fn) const;

  void set_zero();

 private:
  MlpSpec spec_;
  std::vector<Dense> layers_;
};

struct MlpTape {
  std::vector<Matrix> inputs;  // input of every layer
  std::vector<Matrix> pre;     // affine output of every layer
  std::vector<Matrix> masks;   // dropout scale per hidden layer (empty when unused)
  bool training = false;
};

struct MlpForward {
  Matrix output;
  MlpTape tape;
};

// Hidden layers: affine -> LeakyReLU (-> dropout when training). Last layer affine.
MlpForward mlp_forward(const Mlp& mlp, const Matrix& input, bool training, Rng* rng);

struct MlpGradients {
  Mlp params;
  Matrix input;
};

MlpGradients mlp_backward(const Mlp& mlp, const MlpTape& tape, const Matrix& upstream);

// Adds parameter gradients into `grads` and returns the input gradient.
Matrix mlp_backward_accumulate(const Mlp& mlp, const MlpTape& tape, const Matrix& upstream, Mlp& grads);

Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, Rng& rng);

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamConfig config;
  std::uint64_t step = 0;
  std::vector<Matrix> first_moment;
  std::vector<Matrix> second_moment;
};

AdamState adam_init(std::span<const Matrix* const> params, const AdamConfig& config);

// Standard ADAM update with bias correction.
void adam_step(AdamState& state, std::span<Matrix* const> params, std::span<const Matrix* const> grads);

}  // namespace ssg::nn
