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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "core/encoder.hpp"
#include "core/nn.hpp"
#include "core/training.hpp"

namespace ssg {

// Rows are points.
using Points = Eigen::MatrixXd;

Points stack_embeddings(std::span<const Embedding> embeddings);

// ---- triplet accuracy -------------------------------------------------------

struct LocationAccuracy {
  std::size_t count = 0;
  double accuracy = 0.0;
  double mean_positive_distance = 0.0;
  double mean_negative_distance = 0.0;
};

struct TripletAccuracyReport {
  std::map<std::string, LocationAccuracy> per_location;
  LocationAccuracy total;
};

// Fraction of holdout triplets with d(s0, s+) < d(s0, s-), per location and overall.
TripletAccuracyReport triplet_accuracy(const EncoderParams& params, std::span<const SceneSample> holdout,
                                       const AugmentParams& aug, const GraphOptions& graph_options,
                                       std::uint64_t seed);

// ---- regression probes --------------------------------------------------------

struct ProbeConfig {
  int hidden = 30;
  int depth = 4;  // number of affine layers
  double dropout = 0.1;
  std::size_t epochs = 2500;
  double learning_rate = 0.001;
  double train_fraction = 0.8;
};

struct ProbeResult {
  double mse = 0.0;  // on standardized targets (the training objective)
  double mae = 0.0;  // in target units
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t train_count = 0;
  std::size_t test_count = 0;
};

ProbeResult probe_regress(const Points& embeddings, std::span<const double> targets, const ProbeConfig& config,
                          std::uint64_t seed);

// ---- dimensionality reduction ------------------------------------------------

struct PcaResult {
  Points projected;                 // n x out_dim
  Eigen::MatrixXd components;       // out_dim x d, unit rows, sign-fixed
  Eigen::VectorXd mean;             // d
  Eigen::VectorXd eigenvalues;      // out_dim, non-increasing
  Eigen::VectorXd explained_ratio;  // out_dim
};

PcaResult pca_fit_transform(const Points& data, int out_dim);

// Maps projected coordinates back into the input space.
Points pca_reconstruct(const PcaResult& pca, const Points& projected);

struct UmapLiteConfig {
  int n_neighbors = 5;
  double min_dist = 0.0;
  int out_dim = 2;
  int epochs = 200;
  int negative_samples = 5;
  std::uint64_t seed = 0;
};

// Neighbor-graph layout: k-NN fuzzy graph + attractive/repulsive SGD.
Points umap_lite(const Points& data, const UmapLiteConfig& config);

// Fits 1 / (1 + a x^(2b)) to the min_dist-shifted exponential.
std::pair<double, double> fit_layout_curve(double min_dist, double spread = 1.0);

// ---- clustering ----------------------------------------------------------------

struct Merge {
  std::size_t a = 0;  // surviving cluster id (lower index)
  std::size_t b = 0;
  double cost = 0.0;  // Ward linkage in squared-distance units
};

// Full Ward merge sequence; equal costs merge the lexicographically lowest pair first.
std::vector<Merge> ward_linkage(const Points& points);

// Applies the first n - k merges; labels are numbered by first occurrence.
std::vector<int> cut_dendrogram(std::size_t n, std::span<const Merge> merges, std::size_t k);

std::vector<int> agglomerative_cluster(const Points& points, std::size_t k);

double silhouette_score(const Points& points, std::span<const int> assignments);

struct ClusterReport {
  std::vector<int> assignments;
  std::vector<std::size_t> candidates;
  std::vector<double> silhouettes;
  std::size_t selected = 0;
  double selected_silhouette = 0.0;
};

ClusterReport select_clusters(const Points& points, std::size_t k_min = 2, std::size_t k_max = 25);

double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

}  // namespace ssg
