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

#include "core/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <thread>

#include "core/error.hpp"

namespace ssg {

double euclidean_distance(const Embedding& a, const Embedding& b) {
  require(a.size() == b.size(), ErrorKind::ShapeMismatch, "embedding widths differ");
  return (b - a).norm();
}

double triplet_loss(const Embedding& anchor, const Embedding& positive, const Embedding& negative, double margin) {
  require(margin > 0.0, ErrorKind::InvariantViolation, "margin must be > 0");
  return std::max(euclidean_distance(anchor, positive) - euclidean_distance(anchor, negative) + margin, 0.0);
}

TripletLossGradient triplet_loss_gradient(const Embedding& anchor, const Embedding& positive,
                                          const Embedding& negative, double margin) {
  TripletLossGradient g;
  g.loss = triplet_loss(anchor, positive, negative, margin);
  g.anchor = Embedding::Zero(anchor.size());
  g.positive = Embedding::Zero(anchor.size());
  g.negative = Embedding::Zero(anchor.size());
  if (g.loss <= 0.0) return g;
  const Embedding dp = positive - anchor;
  const Embedding dn = negative - anchor;
  const double np = dp.norm();
  const double nn_ = dn.norm();
  if (np > 0.0) {
    g.positive += dp / np;
    g.anchor -= dp / np;
  }
  if (nn_ > 0.0) {
    g.negative -= dn / nn_;
    g.anchor += dn / nn_;
  }
  return g;
}

std::size_t sample_negative(std::size_t anchor, std::size_t batch_size, Rng& rng) {
  require(batch_size >= 2, ErrorKind::BatchTooSmall, "negative sampling needs at least two scenes");
  std::uniform_int_distribution<std::size_t> pick(0, batch_size - 2);
  std::size_t idx = pick(rng);
  if (idx >= anchor) ++idx;
  return idx;
}

namespace {

SceneGraph augmented_graph(const SceneSample& sample, const AugmentParams& aug, const GraphOptions& options,
                           std::uint64_t round) {
  AugmentParams p = aug;
  p.seed = scene_augment_seed(aug.seed, sample.scene->scene_id, round);
  return build_scene_graph(augment_scene(*sample.scene, p), *sample.map, options);
}

}  // namespace

std::vector<Triplet> build_batch_triplets(std::span<const SceneSample> batch, const AugmentParams& aug,
                                          const GraphOptions& graph_options, std::uint64_t round, Rng& rng) {
  require(batch.size() >= 2, ErrorKind::BatchTooSmall,
          "batch of " + std::to_string(batch.size()) + " cannot provide negatives");
  std::vector<Triplet> out;
  out.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    Triplet t;
    t.anchor_index = i;
    t.negative_index = sample_negative(i, batch.size(), rng);
    require(batch[t.negative_index].scene->scene_id != batch[i].scene->scene_id, ErrorKind::InvariantViolation,
            "duplicate scene id " + batch[i].scene->scene_id + " within a batch");
    t.anchor = *batch[i].graph;
    t.positive = augmented_graph(batch[i], aug, graph_options, round);
    t.negative = *batch[t.negative_index].graph;
    out.push_back(std::move(t));
  }
  return out;
}

DatasetSplit split_dataset(std::size_t count, std::uint64_t seed, double holdout_fraction,
                           double validation_fraction) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, "split"));
  std::shuffle(order.begin(), order.end(), rng);
  const auto holdout_n = static_cast<std::size_t>(std::llround(holdout_fraction * static_cast<double>(count)));
  DatasetSplit split;
  split.holdout.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(holdout_n));
  const std::size_t rest = count - holdout_n;
  const auto val_n = static_cast<std::size_t>(std::llround(validation_fraction * static_cast<double>(rest)));
  split.validation.assign(order.begin() + static_cast<std::ptrdiff_t>(holdout_n),
                          order.begin() + static_cast<std::ptrdiff_t>(holdout_n + val_n));
  split.train.assign(order.begin() + static_cast<std::ptrdiff_t>(holdout_n + val_n), order.end());
  std::sort(split.holdout.begin(), split.holdout.end());
  std::sort(split.validation.begin(), split.validation.end());
  std::sort(split.train.begin(), split.train.end());
  return split;
}

void validate(const TrainConfig& config) {
  require(config.learning_rate > 0.0, ErrorKind::InvariantViolation, "learning rate must be > 0");
  require(config.margin > 0.0, ErrorKind::InvariantViolation, "margin must be > 0");
  require(config.batch_size > 0, ErrorKind::InvariantViolation, "batch size must be > 0");
  validate(config.augment);
}

TripletMetrics evaluate_triplets(const EncoderParams& params, std::span<const Triplet> triplets, double margin) {
  TripletMetrics m;
  m.count = triplets.size();
  if (triplets.empty()) return m;
  std::size_t correct = 0;
  for (const auto& t : triplets) {
    const Embedding a = encode(params, t.anchor);
    const Embedding p = encode(params, t.positive);
    const Embedding n = encode(params, t.negative);
    const double dp = euclidean_distance(a, p);
    const double dn = euclidean_distance(a, n);
    m.loss += std::max(dp - dn + margin, 0.0);
    m.mean_positive_distance += dp;
    m.mean_negative_distance += dn;
    if (dp < dn) ++correct;
  }
  const double n = static_cast<double>(triplets.size());
  m.loss /= n;
  m.mean_positive_distance /= n;
  m.mean_negative_distance /= n;
  m.accuracy = static_cast<double>(correct) / n;
  return m;
}

std::vector<Triplet> fixed_triplets(std::span<const SceneSample> samples, const AugmentParams& aug,
                                    const GraphOptions& graph_options, std::uint64_t seed) {
  if (samples.size() < 2) return {};
  AugmentParams fixed = aug;
  fixed.seed = seed;
  Rng rng(derive_seed(seed, "negatives"));
  return build_batch_triplets(samples, fixed, graph_options, 0, rng);
}

namespace {

double triplet_gradient(const EncoderParams& params, const Triplet& t, double margin, std::uint64_t seed,
                        EncoderParams& grads) {
  const GraphTensors ga = to_tensors(t.anchor);
  const GraphTensors gp = to_tensors(t.positive);
  const GraphTensors gn = to_tensors(t.negative);
  Rng ra(derive_seed(seed, 0));
  Rng rp(derive_seed(seed, 1));
  Rng rn(derive_seed(seed, 2));
  EncodeTape ta, tp, tn;
  const Embedding a = encode(params, ga, true, &ra, &ta);
  const Embedding p = encode(params, gp, true, &rp, &tp);
  const Embedding n = encode(params, gn, true, &rn, &tn);
  const TripletLossGradient lg = triplet_loss_gradient(a, p, n, margin);
  if (lg.loss > 0.0) {
    encode_backward(params, ga, ta, lg.anchor, grads);
    encode_backward(params, gp, tp, lg.positive, grads);
    encode_backward(params, gn, tn, lg.negative, grads);
  }
  return lg.loss;
}

}  // namespace

double triplet_batch_gradient(const EncoderParams& params, std::span<const Triplet> triplets, double margin,
                              std::uint64_t dropout_seed, std::size_t workers, EncoderParams& grads) {
  const std::size_t n = triplets.size();
  if (n == 0) return 0.0;
  std::vector<EncoderParams> per(n);
  std::vector<double> losses(n, 0.0);
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      per[i] = params.zeros_like();
      losses[i] = triplet_gradient(params, triplets[i], margin, derive_seed(dropout_seed, i), per[i]);
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, n);
  if (workers == 1) {
    run(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t b = w * chunk;
      const std::size_t e = std::min(n, b + chunk);
      if (b < e) pool.emplace_back(run, b, e);
    }
    for (auto& th : pool) th.join();
  }
  auto dst = grads.tensors();
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto src = per[i].tensors();
    for (std::size_t k = 0; k < dst.size(); ++k) *dst[k] += *src[k];
    loss += losses[i];
  }
  return loss / static_cast<double>(n);
}

TrainResult train(std::span<const SceneSample> train_set, std::span<const SceneSample> validation_set,
                  const TrainConfig& config, const EncoderParams& init, const TrainHooks& hooks) {
  validate(config);
  require(!train_set.empty(), ErrorKind::TooFewSamples, "training split is empty");
  for (const auto& s : train_set)
    require(!s.graph->nodes.empty(), ErrorKind::EmptyGraph, "scene " + s.scene->scene_id + " has an empty graph");
  for (const auto& s : validation_set)
    require(!s.graph->nodes.empty(), ErrorKind::EmptyGraph, "scene " + s.scene->scene_id + " has an empty graph");

  TrainResult result;
  result.best = init;
  result.final_params = init;
  EncoderParams& params = result.final_params;
  auto param_ptrs = params.tensors();
  {
    const auto const_ptrs = std::as_const(params).tensors();
    nn::AdamConfig adam = config.adam;
    adam.learning_rate = config.learning_rate;
    result.final_adam = nn::adam_init(const_ptrs, adam);
  }

  const std::vector<Triplet> val_triplets =
      fixed_triplets(validation_set, config.augment, config.graph, config.validation_seed);
  std::optional<TripletMetrics> best_metrics;

  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    Rng shuffle_rng(derive_seed(config.seed, "shuffle:" + std::to_string(epoch)));
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    double loss_sum = 0.0;
    std::size_t loss_count = 0;
    std::size_t batch_index = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size, ++batch_index) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      if (end - begin < 2) {
        if (hooks.warn) hooks.warn("epoch " + std::to_string(epoch) + ": skipping batch of size 1");
        continue;
      }
      std::vector<SceneSample> batch;
      for (std::size_t i = begin; i < end; ++i) batch.push_back(train_set[order[i]]);
      const std::uint64_t batch_seed =
          derive_seed(config.seed, "batch:" + std::to_string(epoch) + ":" + std::to_string(batch_index));
      Rng neg_rng(derive_seed(batch_seed, "negatives"));
      const auto triplets = build_batch_triplets(batch, config.augment, config.graph, epoch, neg_rng);

      EncoderParams grads = params.zeros_like();
      const double loss =
          triplet_batch_gradient(params, triplets, config.margin, derive_seed(batch_seed, "dropout"), config.workers, grads);
      require(std::isfinite(loss), ErrorKind::NumericFailure, "non-finite training loss at epoch " + std::to_string(epoch));
      auto grad_ptrs = grads.tensors();
      const double scale = 1.0 / static_cast<double>(triplets.size());
      std::vector<const nn::Matrix*> grad_const;
      for (auto* g : grad_ptrs) {
        *g *= scale;
        grad_const.push_back(g);
      }
      nn::adam_step(result.final_adam, param_ptrs, grad_const);
      loss_sum += loss * static_cast<double>(triplets.size());
      loss_count += triplets.size();
    }

    const TripletMetrics val = evaluate_triplets(params, val_triplets, config.margin);
    EpochRecord record{epoch, loss_count ? loss_sum / static_cast<double>(loss_count) : 0.0, val.loss, val.accuracy};
    require(std::isfinite(record.train_loss) && std::isfinite(record.val_loss), ErrorKind::NumericFailure,
            "non-finite loss at epoch " + std::to_string(epoch));
    result.history.push_back(record);
    if (hooks.on_epoch) hooks.on_epoch(record);

    // Only trained epochs are candidates. Without a validation split every epoch counts.
    const bool better = !best_metrics || val_triplets.empty() || val.accuracy > best_metrics->accuracy ||
                        (val.accuracy == best_metrics->accuracy && val.loss < best_metrics->loss);
    if (better) {
      best_metrics = val;
      result.best = params;
      result.best_epoch = epoch;
      if (hooks.on_improvement) hooks.on_improvement(TrainCheckpoint{epoch, &result.best, &result.final_adam, record});
    }
  }
  return result;
}

}  // namespace ssg
