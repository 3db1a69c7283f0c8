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

#include "core/nn.hpp"
#include "core/scene_graph.hpp"

namespace ssg {

using Embedding = Eigen::VectorXd;

struct EncoderConfig {
  int hidden = 60;
  int embedding = 12;
  std::vector<int> head_hidden = {60, 60};  // head is hidden -> head_hidden... -> embedding
  double leaky_slope = 0.01;
  double gnn_dropout = 0.1;
};

struct GnnLayerParams {
  nn::Mlp message;  // (v_i, v_j[, e_ji]) -> hidden
  nn::Mlp update;   // (v_i, aggregate) -> hidden
};

struct EncoderParams {
  EncoderConfig config;
  GnnLayerParams layer1;  // node + edge features
  GnnLayerParams layer2;  // hidden node states only
  nn::Mlp head;

  static EncoderParams init(const EncoderConfig& config, std::uint64_t seed);
  // Same shapes, all zero; used as a gradient buffer.
  EncoderParams zeros_like() const;

  void for_each_tensor(const std::function<void(const std::string&, nn::Matrix&)>& fn);
  void for_each_tensor(const std::function<void(const std::string&, const nn::Matrix&)>& fn) const;
  std::vector<nn::Matrix*> tensors();
  std::vector<const nn::Matrix*> tensors() const;
  std::size_t parameter_count() const;
};

// Dense views of a scene graph, built once per graph.
struct GraphTensors {
  nn::Matrix nodes;  // N x 5
  nn::Matrix edges;  // M x 9
  std::vector<Eigen::Index> origin;
  std::vector<Eigen::Index> target;
};

GraphTensors to_tensors(const SceneGraph& graph);

struct MessagePassTape {
  nn::MlpTape message;
  nn::MlpTape update;
  Eigen::Index state_width = 0;
};

// One message-passing layer with elementwise-sum aggregation over incoming edges.
nn::Matrix message_pass(const GnnLayerParams& layer, const GraphTensors& graph, const nn::Matrix& states,
                        bool use_edge_features, bool training, Rng* rng, MessagePassTape* tape = nullptr);

// Accumulates parameter gradients and returns the gradient w.r.t. the input states.
nn::Matrix message_pass_backward(const GnnLayerParams& layer, const GraphTensors& graph, const MessagePassTape& tape,
                                 const nn::Matrix& upstream, GnnLayerParams& grads);

struct EncodeTape {
  MessagePassTape layer1;
  MessagePassTape layer2;
  nn::MlpTape head;
  Eigen::Index node_count = 0;
};

// Sum over the node states after both layers, before the projection head.
Eigen::VectorXd encode_readout(const EncoderParams& params, const GraphTensors& graph, bool training, Rng* rng);

Embedding encode(const EncoderParams& params, const GraphTensors& graph, bool training, Rng* rng,
                 EncodeTape* tape = nullptr);
Embedding encode(const EncoderParams& params, const SceneGraph& graph, bool training = false, Rng* rng = nullptr);

void encode_backward(const EncoderParams& params, const GraphTensors& graph, const EncodeTape& tape,
                     const Embedding& upstream, EncoderParams& grads);

// Evaluation-mode encoding of many graphs.
std::vector<Embedding> encode_batch(const EncoderParams& params, std::span<const SceneGraph> graphs);

}  // namespace ssg
