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

#include "core/encoder.hpp"

#include "core/error.hpp"

namespace ssg {

namespace {

nn::MlpSpec two_layer(int in, int hidden, double slope, double dropout) {
  return nn::MlpSpec{{in, hidden, hidden}, slope, dropout};
}

const int kNodeWidth = static_cast<int>(kNodeFeatureWidth);
const int kEdgeWidth = static_cast<int>(kEdgeFeatureWidth);

}  // namespace

EncoderParams EncoderParams::init(const EncoderConfig& config, std::uint64_t seed) {
  require(config.hidden > 0 && config.embedding > 0, ErrorKind::InvariantViolation, "encoder widths must be > 0");
  Rng rng(seed);
  const int h = config.hidden;
  EncoderParams p;
  p.config = config;
  p.layer1.message = nn::Mlp::glorot(two_layer(2 * kNodeWidth + kEdgeWidth, h, config.leaky_slope, config.gnn_dropout), rng);
  p.layer1.update = nn::Mlp::glorot(two_layer(kNodeWidth + h, h, config.leaky_slope, config.gnn_dropout), rng);
  p.layer2.message = nn::Mlp::glorot(two_layer(2 * h, h, config.leaky_slope, config.gnn_dropout), rng);
  p.layer2.update = nn::Mlp::glorot(two_layer(2 * h, h, config.leaky_slope, config.gnn_dropout), rng);
  nn::MlpSpec head{{h}, config.leaky_slope, 0.0};
  for (int w : config.head_hidden) head.widths.push_back(w);
  head.widths.push_back(config.embedding);
  p.head = nn::Mlp::glorot(head, rng);
  return p;
}

EncoderParams EncoderParams::zeros_like() const {
  EncoderParams z;
  z.config = config;
  z.layer1 = {nn::Mlp(layer1.message.spec()), nn::Mlp(layer1.update.spec())};
  z.layer2 = {nn::Mlp(layer2.message.spec()), nn::Mlp(layer2.update.spec())};
  z.head = nn::Mlp(head.spec());
  return z;
}

void EncoderParams::for_each_tensor(const std::function<void(const std::string&, nn::Matrix&)>& fn) {
  layer1.message.for_each_tensor("gnn1.message", fn);
  layer1.update.for_each_tensor("gnn1.update", fn);
  layer2.message.for_each_tensor("gnn2.message", fn);
  layer2.update.for_each_tensor("gnn2.update", fn);
  head.for_each_tensor("head", fn);
}

void EncoderParams::for_each_tensor(const std::function<void(const std::string&, const nn::Matrix&)>& fn) const {
  layer1.message.for_each_tensor("gnn1.message", fn);
  layer1.update.for_each_tensor("gnn1.update", fn);
  layer2.message.for_each_tensor("gnn2.message", fn);
  layer2.update.for_each_tensor("gnn2.update", fn);
  head.for_each_tensor("head", fn);
}

std::vector<nn::Matrix*> EncoderParams::tensors() {
  std::vector<nn::Matrix*> out;
  for_each_tensor([&out](const std::string&, nn::Matrix& m) { out.push_back(&m); });
  return out;
}

std::vector<const nn::Matrix*> EncoderParams::tensors() const {
  std::vector<const nn::Matrix*> out;
  for_each_tensor([&out](const std::string&, const nn::Matrix& m) { out.push_back(&m); });
  return out;
}

std::size_t EncoderParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto* t : tensors()) n += static_cast<std::size_t>(t->size());
  return n;
}

GraphTensors to_tensors(const SceneGraph& graph) {
  GraphTensors t;
  const auto n = static_cast<Eigen::Index>(graph.nodes.size());
  const auto m = static_cast<Eigen::Index>(graph.edges.size());
  t.nodes.resize(n, kNodeWidth);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int c = 0; c < kNodeWidth; ++c) t.nodes(i, c) = graph.nodes[static_cast<std::size_t>(i)].features[c];
  t.edges.resize(m, kEdgeWidth);
  t.origin.reserve(graph.edges.size());
  t.target.reserve(graph.edges.size());
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto& e = graph.edges[static_cast<std::size_t>(k)];
    require(e.origin < graph.nodes.size() && e.target < graph.nodes.size() && e.origin != e.target,
            ErrorKind::InvariantViolation, "graph " + graph.scene_id + ": invalid edge endpoints");
    for (int c = 0; c < kEdgeWidth; ++c) t.edges(k, c) = e.features[c];
    t.origin.push_back(static_cast<Eigen::Index>(e.origin));
    t.target.push_back(static_cast<Eigen::Index>(e.target));
  }
  return t;
}

nn::Matrix message_pass(const GnnLayerParams& layer, const GraphTensors& graph, const nn::Matrix& states,
                        bool use_edge_features, bool training, Rng* rng, MessagePassTape* tape) {
  const Eigen::Index n = states.rows();
  const Eigen::Index w = states.cols();
  const auto m = static_cast<Eigen::Index>(graph.origin.size());
  const Eigen::Index ew = use_edge_features ? graph.edges.cols() : 0;
  require(layer.message.input_width() == 2 * w + ew, ErrorKind::ShapeMismatch,
          "message MLP expects width " + std::to_string(layer.message.input_width()) + ", got " +
              std::to_string(2 * w + ew));
  require(layer.update.input_width() == w + layer.message.output_width(), ErrorKind::ShapeMismatch,
          "update MLP input width mismatch");

  nn::Matrix message_in(m, 2 * w + ew);
  for (Eigen::Index k = 0; k < m; ++k) {
    message_in.row(k).head(w) = states.row(graph.target[static_cast<std::size_t>(k)]);
    message_in.row(k).segment(w, w) = states.row(graph.origin[static_cast<std::size_t>(k)]);
    if (ew > 0) message_in.row(k).tail(ew) = graph.edges.row(k);
  }
  auto messages = nn::mlp_forward(layer.message, message_in, training, rng);

  const Eigen::Index h = layer.message.output_width();
  nn::Matrix update_in(n, w + h);
  update_in.leftCols(w) = states;
  update_in.rightCols(h).setZero();
  for (Eigen::Index k = 0; k < m; ++k)
    update_in.row(graph.target[static_cast<std::size_t>(k)]).tail(h) += messages.output.row(k);

  auto updated = nn::mlp_forward(layer.update, update_in, training, rng);
  if (tape) {
    tape->message = std::move(messages.tape);
    tape->update = std::move(updated.tape);
    tape->state_width = w;
  }
  return std::move(updated.output);
}

nn::Matrix message_pass_backward(const GnnLayerParams& layer, const GraphTensors& graph, const MessagePassTape& tape,
                                 const nn::Matrix& upstream, GnnLayerParams& grads) {
  const Eigen::Index w = tape.state_width;
  const Eigen::Index h = layer.message.output_width();
  nn::Matrix d_update_in = nn::mlp_backward_accumulate(layer.update, tape.update, upstream, grads.update);
  nn::Matrix d_states = d_update_in.leftCols(w);

  const auto m = static_cast<Eigen::Index>(graph.origin.size());
  nn::Matrix d_messages(m, h);
  for (Eigen::Index k = 0; k < m; ++k)
    d_messages.row(k) = d_update_in.row(graph.target[static_cast<std::size_t>(k)]).tail(h);
  nn::Matrix d_message_in = nn::mlp_backward_accumulate(layer.message, tape.message, d_messages, grads.message);
  for (Eigen::Index k = 0; k < m; ++k) {
    d_states.row(graph.target[static_cast<std::size_t>(k)]) += d_message_in.row(k).head(w);
    d_states.row(graph.origin[static_cast<std::size_t>(k)]) += d_message_in.row(k).segment(w, w);
  }
  return d_states;
}

namespace {

nn::Matrix node_states(const EncoderParams& params, const GraphTensors& graph, bool training, Rng* rng,
                       EncodeTape* tape) {
  require(graph.nodes.rows() > 0, ErrorKind::EmptyGraph, "cannot encode a graph without nodes");
  nn::Matrix h1 = message_pass(params.layer1, graph, graph.nodes, true, training, rng, tape ? &tape->layer1 : nullptr);
  return message_pass(params.layer2, graph, h1, false, training, rng, tape ? &tape->layer2 : nullptr);
}

}  // namespace

Eigen::VectorXd encode_readout(const EncoderParams& params, const GraphTensors& graph, bool training, Rng* rng) {
  return node_states(params, graph, training, rng, nullptr).colwise().sum().transpose();
}

Embedding encode(const EncoderParams& params, const GraphTensors& graph, bool training, Rng* rng, EncodeTape* tape) {
  const nn::Matrix h2 = node_states(params, graph, training, rng, tape);
  const nn::Matrix readout = h2.colwise().sum();
  auto head = nn::mlp_forward(params.head, readout, training, rng);
  if (tape) {
    tape->head = std::move(head.tape);
    tape->node_count = h2.rows();
  }
  return head.output.row(0).transpose();
}

Embedding encode(const EncoderParams& params, const SceneGraph& graph, bool training, Rng* rng) {
  require(!graph.nodes.empty(), ErrorKind::EmptyGraph, "graph " + graph.scene_id + " has no nodes");
  return encode(params, to_tensors(graph), training, rng);
}

void encode_backward(const EncoderParams& params, const GraphTensors& graph, const EncodeTape& tape,
                     const Embedding& upstream, EncoderParams& grads) {
  require(upstream.size() == params.head.output_width(), ErrorKind::ShapeMismatch, "embedding gradient width mismatch");
  const nn::Matrix d_readout = nn::mlp_backward_accumulate(params.head, tape.head, upstream.transpose(), grads.head);
  const nn::Matrix d_h2 = d_readout.replicate(tape.node_count, 1);
  const nn::Matrix d_h1 = message_pass_backward(params.layer2, graph, tape.layer2, d_h2, grads.layer2);
  message_pass_backward(params.layer1, graph, tape.layer1, d_h1, grads.layer1);
}

std::vector<Embedding> encode_batch(const EncoderParams& params, std::span<const SceneGraph> graphs) {
  std::vector<Embedding> out;
  out.reserve(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].nodes.empty())
      fail(ErrorKind::EmptyGraph, "graph #" + std::to_string(i) + " (" + graphs[i].scene_id + ") has no nodes");
    out.push_back(encode(params, to_tensors(graphs[i]), false, nullptr));
  }
  return out;
}

}  // namespace ssg
