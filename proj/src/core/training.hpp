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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "core/augment.hpp"
#include "core/encoder.hpp"
#include "core/nn.hpp"
#include "core/scene_graph.hpp"

namespace ssg {

double euclidean_distance(const Embedding& a, const Embedding& b);

// max(d(s0, s+) - d(s0, s-) + margin, 0)
double triplet_loss(const Embedding& anchor, const Embedding& positive, const Embedding& negative, double margin);

struct TripletLossGradient {
  double loss = 0.0;
  Embedding anchor, positive, negative;
};

// Subgradient of the triplet loss; coincident points contribute a zero direction.
TripletLossGradient triplet_loss_gradient(const Embedding& anchor, const Embedding& positive,
                                          const Embedding& negative, double margin);

// One scene with its map and precomputed (anchor) graph.
struct SceneSample {
  const TrafficScene* scene = nullptr;
  const LaneMap* map = nullptr;
  const SceneGraph* graph = nullptr;
};

struct Triplet {
  SceneGraph anchor;
  SceneGraph positive;
  SceneGraph negative;
  std::size_t anchor_index = 0;
  std::size_t negative_index = 0;
};

// Draws a negative uniformly from the batch members other than `anchor`.
std::size_t sample_negative(std::size_t anchor, std::size_t batch_size, Rng& rng);

// Positives come from augmenting each scene with scene_augment_seed(aug.seed, scene_id, round).
std::vector<Triplet> build_batch_triplets(std::span<const SceneSample> batch, const AugmentParams& aug,
                                          const GraphOptions& graph_options, std::uint64_t round, Rng& rng);

struct DatasetSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> holdout;
};

// Holdout fraction first, then the remainder split into train/validation.
DatasetSplit split_dataset(std::size_t count, std::uint64_t seed, double holdout_fraction = 0.2,
                           double validation_fraction = 0.2);

struct TrainConfig {
  double learning_rate = 0.001;
  double margin = 0.5;
  std::size_t batch_size = 400;
  std::size_t epochs = 400;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::uint64_t validation_seed = 7;
  nn::AdamConfig adam;  // learning_rate above takes precedence
  EncoderConfig encoder;
  AugmentParams augment;
  GraphOptions graph;
};

void validate(const TrainConfig& config);

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
};

struct TrainCheckpoint {
  std::size_t epoch = 0;
  const EncoderParams* params = nullptr;
  const nn::AdamState* adam = nullptr;
  EpochRecord record;
};

struct TrainResult {
  EncoderParams best;
  EncoderParams final_params;
  nn::AdamState final_adam;
  std::size_t best_epoch = 0;
  std::vector<EpochRecord> history;
};

struct TrainHooks {
  std::function<void(const TrainCheckpoint&)> on_improvement;
  std::function<void(const EpochRecord&)> on_epoch;
  std::function<void(const std::string&)> warn;
};

struct TripletMetrics {
  double loss = 0.0;
  double accuracy = 0.0;
  double mean_positive_distance = 0.0;
  double mean_negative_distance = 0.0;
  std::size_t count = 0;
};

// Evaluation-mode metrics over fixed triplets.
TripletMetrics evaluate_triplets(const EncoderParams& params, std::span<const Triplet> triplets, double margin);

// Fixed validation triplets (positives and negatives drawn from `seed`).
std::vector<Triplet> fixed_triplets(std::span<const SceneSample> samples, const AugmentParams& aug,
                                    const GraphOptions& graph_options, std::uint64_t seed);

// Mean training-mode loss and summed gradient for a batch of triplets.
// Per-triplet gradients are reduced in index order, independent of `workers`.
double triplet_batch_gradient(const EncoderParams& params, std::span<const Triplet> triplets, double margin,
                              std::uint64_t dropout_seed, std::size_t workers, EncoderParams& grads);

TrainResult train(std::span<const SceneSample> train_set, std::span<const SceneSample> validation_set,
                  const TrainConfig& config, const EncoderParams& init, const TrainHooks& hooks = {});

}  // namespace ssg
