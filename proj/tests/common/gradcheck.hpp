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

// Finite-difference gradient checks shared by the unit and acceptance suites.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "common/oracles.hpp"
#include "core/encoder.hpp"
#include "core/nn.hpp"
#include "core/training.hpp"

namespace ssg::testing {

struct GradCheck {
  double worst = 0.0;
  std::size_t checked = 0;
  std::size_t kinks = 0;  // coordinates whose stencil changed a LeakyReLU branch; not compared

  void add(double analytic, double numeric) {
    worst = std::max(worst, relative_error(analytic, numeric));
    ++checked;
  }
};

inline nn::Matrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  nn::Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = n(rng);
  return m;
}

// Picks up to `budget` coordinates of a tensor list, deterministically.
inline std::vector<std::pair<nn::Matrix*, Eigen::Index>> sample_coordinates(const std::vector<nn::Matrix*>& tensors,
                                                                            std::size_t budget, Rng& rng) {
  std::vector<std::pair<nn::Matrix*, Eigen::Index>> all;
  for (auto* t : tensors)
    for (Eigen::Index i = 0; i < t->size(); ++i) all.emplace_back(t, i);
  if (all.size() > budget) {
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(budget);
  }
  return all;
}

// Weighted-sum objective through one message-passing layer.
inline GradCheck check_message_pass(std::uint64_t seed, bool use_edges, std::size_t budget = 400) {
  Rng rng(seed);
  const int h = 7;
  std::uniform_int_distribution<int> nodes(1, 5);
  SceneGraph g = random_graph(rng, static_cast<std::size_t>(nodes(rng)), 0.6);
  const auto tensors = to_tensors(g);
  const int w = use_edges ? static_cast<int>(kNodeFeatureWidth) : 4;
  nn::Matrix states = use_edges ? tensors.nodes : random_matrix(rng, tensors.nodes.rows(), w);
  GnnLayerParams layer;
  const int ew = use_edges ? static_cast<int>(kEdgeFeatureWidth) : 0;
  layer.message = nn::Mlp::glorot({{2 * w + ew, h, h}, 0.01, 0.0}, rng);
  layer.update = nn::Mlp::glorot({{w + h, h, h}, 0.01, 0.0}, rng);
  for (auto* mlp : {&layer.message, &layer.update})
    for (auto& l : mlp->layers()) l.bias = random_matrix(rng, 1, l.bias.cols(), 0.1);
  const nn::Matrix weights = random_matrix(rng, states.rows(), h);

  auto objective = [&] {
    return (message_pass(layer, tensors, states, use_edges, false, nullptr).array() * weights.array()).sum();
  };
  MessagePassTape tape;
  message_pass(layer, tensors, states, use_edges, false, nullptr, &tape);
  GnnLayerParams grads{nn::Mlp(layer.message.spec()), nn::Mlp(layer.update.spec())};
  const nn::Matrix d_states = message_pass_backward(layer, tensors, tape, weights, grads);

  std::vector<nn::Matrix*> params, grad_tensors;
  for (auto* mlp : {&layer.message, &layer.update})
    for (auto& l : mlp->layers()) {
      params.push_back(&l.weight);
      params.push_back(&l.bias);
    }
  for (auto* mlp : {&grads.message, &grads.update})
    for (auto& l : mlp->layers()) {
      grad_tensors.push_back(&l.weight);
      grad_tensors.push_back(&l.bias);
    }
  GradCheck out;
  for (auto [t, i] : sample_coordinates(params, budget, rng)) {
    const auto idx = static_cast<std::size_t>(std::find(params.begin(), params.end(), t) - params.begin());
    out.add((*grad_tensors[idx])(i), central_difference(objective, (*t)(i)));
  }
  for (Eigen::Index i = 0; i < states.size(); ++i) out.add(d_states(i), central_difference(objective, states(i)));
  return out;
}

// Weighted-sum objective through an MLP of random shape.
inline GradCheck check_mlp(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> width(2, 8);
  nn::MlpSpec spec{{width(rng), width(rng), width(rng), width(rng)}, 0.01, 0.0};
  auto mlp = nn::Mlp::glorot(spec, rng);
  for (auto& l : mlp.layers()) l.bias = random_matrix(rng, 1, l.bias.cols(), 0.1);
  nn::Matrix x = random_matrix(rng, 3, spec.widths.front());
  const nn::Matrix w = random_matrix(rng, 3, spec.widths.back());
  auto objective = [&] { return (nn::mlp_forward(mlp, x, false, nullptr).output.array() * w.array()).sum(); };
  const auto fwd = nn::mlp_forward(mlp, x, false, nullptr);
  const auto grads = nn::mlp_backward(mlp, fwd.tape, w);
  GradCheck out;
  for (std::size_t l = 0; l < mlp.layers().size(); ++l) {
    auto& layer = mlp.layers()[l];
    for (Eigen::Index i = 0; i < layer.weight.size(); ++i)
      out.add(grads.params.layers()[l].weight(i), central_difference(objective, layer.weight(i)));
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i)
      out.add(grads.params.layers()[l].bias(i), central_difference(objective, layer.bias(i)));
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) out.add(grads.input(i), central_difference(objective, x(i)));
  return out;
}

// Full encoder on three graphs of at most five nodes, through the triplet loss.
// The margin keeps the hinge active. Coordinates whose +h and -h evaluations take
// different LeakyReLU branches are counted in `kinks` and not compared.
inline GradCheck check_encoder_triplet(std::uint64_t seed, std::size_t budget = 300, double h = 1e-5) {
  Rng rng(seed);
  EncoderConfig config;
  config.gnn_dropout = 0.0;
  EncoderParams params = EncoderParams::init(config, seed);
  std::uniform_int_distribution<int> nodes(1, 5);
  const SceneGraph graphs[3] = {random_graph(rng, static_cast<std::size_t>(nodes(rng)), 0.6),
                                random_graph(rng, static_cast<std::size_t>(nodes(rng)), 0.6),
                                random_graph(rng, static_cast<std::size_t>(nodes(rng)), 0.6)};
  const GraphTensors t[3] = {to_tensors(graphs[0]), to_tensors(graphs[1]), to_tensors(graphs[2])};
  const Embedding a0 = encode(params, t[0], false, nullptr);
  const Embedding p0 = encode(params, t[1], false, nullptr);
  const Embedding n0 = encode(params, t[2], false, nullptr);
  const double margin = std::max(0.5, (n0 - a0).norm() - (p0 - a0).norm() + 1.0);

  // Loss and the branch taken by every hidden unit.
  auto evaluate = [&](std::vector<bool>* branches) {
    EncodeTape tapes[3];
    Embedding e[3];
    for (int k = 0; k < 3; ++k) e[k] = encode(params, t[k], false, nullptr, &tapes[k]);
    branches->clear();
    for (const auto& tp : tapes)
      for (const nn::MlpTape* m : {&tp.layer1.message, &tp.layer1.update, &tp.layer2.message, &tp.layer2.update,
                                   &tp.head})
        for (std::size_t l = 0; l + 1 < m->pre.size(); ++l)
          for (Eigen::Index i = 0; i < m->pre[l].size(); ++i) branches->push_back(m->pre[l](i) > 0.0);
    return triplet_loss(e[0], e[1], e[2], margin);
  };
  EncodeTape tapes[3];
  const Embedding a = encode(params, t[0], false, nullptr, &tapes[0]);
  const Embedding p = encode(params, t[1], false, nullptr, &tapes[1]);
  const Embedding n = encode(params, t[2], false, nullptr, &tapes[2]);
  const auto lg = triplet_loss_gradient(a, p, n, margin);
  EncoderParams grads = params.zeros_like();
  encode_backward(params, t[0], tapes[0], lg.anchor, grads);
  encode_backward(params, t[1], tapes[1], lg.positive, grads);
  encode_backward(params, t[2], tapes[2], lg.negative, grads);

  auto ptensors = params.tensors();
  auto gtensors = grads.tensors();
  GradCheck out;
  std::vector<bool> up_branches, down_branches;
  for (auto [tensor, i] : sample_coordinates(ptensors, budget, rng)) {
    const auto idx = static_cast<std::size_t>(std::find(ptensors.begin(), ptensors.end(), tensor) - ptensors.begin());
    double& x = (*tensor)(i);
    const double saved = x;
    x = saved + h;
    const double up = evaluate(&up_branches);
    x = saved - h;
    const double down = evaluate(&down_branches);
    x = saved;
    if (up_branches != down_branches) {
      ++out.kinks;
      continue;
    }
    out.add((*gtensors[idx])(i), (up - down) / (2.0 * h));
  }
  return out;
}

}  // namespace ssg::testing
