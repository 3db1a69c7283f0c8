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

#include "core/nn.hpp"

#include <cmath>

#include "core/error.hpp"

namespace ssg::nn {

void validate(const MlpSpec& spec) {
  require(spec.widths.size() >= 2, ErrorKind::InvariantViolation, "MLP needs at least two widths");
  for (int w : spec.widths) require(w > 0, ErrorKind::InvariantViolation, "MLP widths must be positive");
  require(spec.dropout >= 0.0 && spec.dropout < 1.0, ErrorKind::InvariantViolation, "dropout must lie in [0, 1)");
}

Mlp::Mlp(MlpSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  for (std::size_t l = 0; l + 1 < spec_.widths.size(); ++l) {
    layers_.push_back({Matrix::Zero(spec_.widths[l + 1], spec_.widths[l]), Matrix::Zero(1, spec_.widths[l + 1])});
  }
}

Mlp Mlp::glorot(MlpSpec spec, Rng& rng) {
  Mlp mlp(std::move(spec));
  for (auto& layer : mlp.layers_) {
    const double limit = std::sqrt(6.0 / static_cast<double>(layer.weight.rows() + layer.weight.cols()));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = dist(rng);
  }
  return mlp;
}

void Mlp::for_each_tensor(const std::string& prefix, const std::function<void(const std::string&, Matrix&)>& fn) {
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    fn(prefix + ".l" + std::to_string(l) + ".weight", layers_[l].weight);
    fn(prefix + ".l" + std::to_string(l) + ".bias", layers_[l].bias);
  }
}

void Mlp::for_each_tensor(const std::string& prefix,
                          const std::function<void(const std::string&, const Matrix&)>& fn) const {
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    fn(prefix + ".l" + std::to_string(l) + ".weight", layers_[l].weight);
    fn(prefix + ".l" + std::to_string(l) + ".bias", layers_[l].bias);
  }
}

void Mlp::set_zero() {
  for (auto& layer : layers_) {
    layer.weight.setZero();
    layer.bias.setZero();
  }
}

Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, Rng& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const double keep_scale = 1.0 / (1.0 - rate);
  Matrix mask(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) mask(r, c) = coin(rng) < rate ? 0.0 : keep_scale;
  return mask;
}

MlpForward mlp_forward(const Mlp& mlp, const Matrix& input, bool training, Rng* rng) {
  require(input.cols() == mlp.input_width(), ErrorKind::ShapeMismatch,
          "MLP input has " + std::to_string(input.cols()) + " columns, expected " +
              std::to_string(mlp.input_width()));
  const auto& layers = mlp.layers();
  const bool use_dropout = training && mlp.spec().dropout > 0.0;
  require(!use_dropout || rng != nullptr, ErrorKind::InvariantViolation, "training-mode dropout needs an RNG");
  const double slope = mlp.spec().leaky_slope;

  MlpForward out;
  out.tape.training = training;
  out.tape.inputs.reserve(layers.size());
  out.tape.pre.reserve(layers.size());
  Matrix x = input;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    Matrix z = x * layers[l].weight.transpose();
    z.rowwise() += layers[l].bias.row(0);
    out.tape.inputs.push_back(std::move(x));
    if (l + 1 == layers.size()) {
      out.output = z;
      out.tape.pre.push_back(std::move(z));
      break;
    }
    Matrix a = z.unaryExpr([slope](double v) { return leaky_relu(v, slope); });
    if (use_dropout) {
      Matrix mask = dropout_mask(a.rows(), a.cols(), mlp.spec().dropout, *rng);
      a.array() *= mask.array();
      out.tape.masks.push_back(std::move(mask));
    } else {
      out.tape.masks.emplace_back();
    }
    out.tape.pre.push_back(std::move(z));
    x = std::move(a);
  }
  return out;
}

Matrix mlp_backward_accumulate(const Mlp& mlp, const MlpTape& tape, const Matrix& upstream, Mlp& grads) {
  const auto& layers = mlp.layers();
  require(tape.inputs.size() == layers.size() && tape.pre.size() == layers.size() &&
              tape.masks.size() + 1 == layers.size(),
          ErrorKind::TapeMismatch,
          "tape depth does not match the MLP");
  require(upstream.rows() == tape.pre.back().rows() && upstream.cols() == mlp.output_width(),
          ErrorKind::TapeMismatch, "upstream gradient shape does not match the recorded output");
  require(grads.layers().size() == layers.size(), ErrorKind::ShapeMismatch, "gradient buffer depth mismatch");
  const double slope = mlp.spec().leaky_slope;

  Matrix delta = upstream;
  for (std::size_t li = layers.size(); li-- > 0;) {
    if (li + 1 != layers.size()) {
      if (tape.masks[li].size() != 0) delta.array() *= tape.masks[li].array();
      const Matrix& z = tape.pre[li];
      delta.array() *= z.unaryExpr([slope](double v) { return v >= 0.0 ? 1.0 : slope; }).array();
    }
    grads.layers()[li].weight.noalias() += delta.transpose() * tape.inputs[li];
    grads.layers()[li].bias.noalias() += delta.colwise().sum();
    Matrix next = delta * layers[li].weight;
    delta = std::move(next);
  }
  return delta;
}

MlpGradients mlp_backward(const Mlp& mlp, const MlpTape& tape, const Matrix& upstream) {
  MlpGradients g{Mlp(mlp.spec()), Matrix()};
  g.input = mlp_backward_accumulate(mlp, tape, upstream, g.params);
  return g;
}

AdamState adam_init(std::span<const Matrix* const> params, const AdamConfig& config) {
  AdamState state;
  state.config = config;
  for (const Matrix* p : params) {
    state.first_moment.push_back(Matrix::Zero(p->rows(), p->cols()));
    state.second_moment.push_back(Matrix::Zero(p->rows(), p->cols()));
  }
  return state;
}

void adam_step(AdamState& state, std::span<Matrix* const> params, std::span<const Matrix* const> grads) {
  require(params.size() == grads.size() && params.size() == state.first_moment.size(), ErrorKind::ShapeMismatch,
          "ADAM: parameter, gradient and state counts differ");
  for (std::size_t i = 0; i < params.size(); ++i) {
    require(params[i]->rows() == grads[i]->rows() && params[i]->cols() == grads[i]->cols() &&
                params[i]->rows() == state.first_moment[i].rows() && params[i]->cols() == state.first_moment[i].cols(),
            ErrorKind::ShapeMismatch, "ADAM: tensor " + std::to_string(i) + " shape mismatch");
  }
  const auto& c = state.config;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto m = state.first_moment[i].array();
    auto v = state.second_moment[i].array();
    const auto g = grads[i]->array();
    m = c.beta1 * m + (1.0 - c.beta1) * g;
    v = c.beta2 * v + (1.0 - c.beta2) * g.square();
    params[i]->array() -= c.learning_rate * (m / correction1) / ((v / correction2).sqrt() + c.epsilon);
  }
}

}  // namespace ssg::nn
