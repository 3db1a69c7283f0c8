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

#include "core/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "core/error.hpp"

namespace ssg {

Points stack_embeddings(std::span<const Embedding> embeddings) {
  if (embeddings.empty()) return Points(0, 0);
  Points out(static_cast<Eigen::Index>(embeddings.size()), embeddings.front().size());
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    require(embeddings[i].size() == out.cols(), ErrorKind::ShapeMismatch, "embedding widths differ");
    out.row(static_cast<Eigen::Index>(i)) = embeddings[i].transpose();
  }
  return out;
}

TripletAccuracyReport triplet_accuracy(const EncoderParams& params, std::span<const SceneSample> holdout,
                                       const AugmentParams& aug, const GraphOptions& graph_options,
                                       std::uint64_t seed) {
  require(holdout.size() >= 2, ErrorKind::TooFewSamples, "triplet accuracy needs at least two holdout scenes");
  const auto triplets = fixed_triplets(holdout, aug, graph_options, seed);
  TripletAccuracyReport report;
  std::map<std::string, std::size_t> correct;
  std::size_t total_correct = 0;
  for (const auto& t : triplets) {
    const Embedding a = encode(params, t.anchor);
    const double dp = euclidean_distance(a, encode(params, t.positive));
    const double dn = euclidean_distance(a, encode(params, t.negative));
    auto& loc = report.per_location[holdout[t.anchor_index].scene->location_label];
    loc.count += 1;
    loc.mean_positive_distance += dp;
    loc.mean_negative_distance += dn;
    report.total.count += 1;
    report.total.mean_positive_distance += dp;
    report.total.mean_negative_distance += dn;
    if (dp < dn) {
      ++correct[holdout[t.anchor_index].scene->location_label];
      ++total_correct;
    }
  }
  auto finish = [](LocationAccuracy& acc, std::size_t right) {
    const double n = static_cast<double>(acc.count);
    acc.accuracy = static_cast<double>(right) / n;
    acc.mean_positive_distance /= n;
    acc.mean_negative_distance /= n;
  };
  for (auto& [label, acc] : report.per_location) finish(acc, correct[label]);
  finish(report.total, total_correct);
  return report;
}

namespace {

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

Moments moments(const Eigen::VectorXd& v, bool sample) {
  Moments m;
  const auto n = static_cast<double>(v.size());
  if (v.size() == 0) return m;
  m.mean = v.mean();
  const double ss = (v.array() - m.mean).square().sum();
  const double dof = sample ? n - 1.0 : n;
  m.std = dof > 0.0 ? std::sqrt(ss / dof) : 0.0;
  return m;
}

}  // namespace

ProbeResult probe_regress(const Points& embeddings, std::span<const double> targets, const ProbeConfig& config,
                          std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(embeddings.rows());
  require(n >= 10, ErrorKind::TooFewSamples, "probe needs at least 10 samples, got " + std::to_string(n));
  require(targets.size() == n, ErrorKind::ShapeMismatch, "probe targets and embeddings differ in count");
  require(config.depth >= 2 && config.hidden > 0, ErrorKind::InvariantViolation, "probe depth must be >= 2");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng split_rng(derive_seed(seed, "probe-split"));
  std::shuffle(order.begin(), order.end(), split_rng);
  auto train_n = static_cast<std::size_t>(std::llround(config.train_fraction * static_cast<double>(n)));
  train_n = std::clamp<std::size_t>(train_n, 1, n - 1);
  const std::size_t test_n = n - train_n;

  const Eigen::Index d = embeddings.cols();
  Points x_train(static_cast<Eigen::Index>(train_n), d), x_test(static_cast<Eigen::Index>(test_n), d);
  Eigen::VectorXd y_train(static_cast<Eigen::Index>(train_n)), y_test(static_cast<Eigen::Index>(test_n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = static_cast<Eigen::Index>(order[i]);
    if (i < train_n) {
      x_train.row(static_cast<Eigen::Index>(i)) = embeddings.row(src);
      y_train(static_cast<Eigen::Index>(i)) = targets[order[i]];
    } else {
      x_test.row(static_cast<Eigen::Index>(i - train_n)) = embeddings.row(src);
      y_test(static_cast<Eigen::Index>(i - train_n)) = targets[order[i]];
    }
  }

  // Standardize inputs and targets with training statistics.
  Eigen::RowVectorXd x_mean = x_train.colwise().mean();
  Eigen::RowVectorXd x_std(d);
  for (Eigen::Index c = 0; c < d; ++c) {
    const double s = moments(x_train.col(c), false).std;
    x_std(c) = s > 0.0 ? s : 1.0;
  }
  auto standardize = [&](const Points& x) {
    Points z = x.rowwise() - x_mean;
    return Points(z.array().rowwise() / x_std.array());
  };
  const Points z_train = standardize(x_train);
  const Points z_test = standardize(x_test);
  const Moments ym = moments(y_train, false);
  const double y_scale = ym.std > 0.0 ? ym.std : 1.0;
  const nn::Matrix t_train = ((y_train.array() - ym.mean) / y_scale).matrix();

  nn::MlpSpec spec;
  spec.widths.push_back(static_cast<int>(d));
  for (int l = 0; l + 1 < config.depth; ++l) spec.widths.push_back(config.hidden);
  spec.widths.push_back(1);
  spec.dropout = config.dropout;
  Rng init_rng(derive_seed(seed, "probe-init"));
  nn::Mlp mlp = nn::Mlp::glorot(spec, init_rng);
  std::vector<nn::Matrix*> params;
  mlp.for_each_tensor("probe", [&params](const std::string&, nn::Matrix& m) { params.push_back(&m); });
  std::vector<const nn::Matrix*> const_params(params.begin(), params.end());
  nn::AdamState adam = nn::adam_init(const_params, nn::AdamConfig{config.learning_rate, 0.9, 0.999, 1e-8});
  nn::Mlp grads(spec);
  std::vector<const nn::Matrix*> grad_ptrs;
  grads.for_each_tensor("probe", [&grad_ptrs](const std::string&, const nn::Matrix& m) { grad_ptrs.push_back(&m); });

  Rng dropout_rng(derive_seed(seed, "probe-dropout"));
  const double inv_n = 1.0 / static_cast<double>(train_n);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    auto fwd = nn::mlp_forward(mlp, z_train, true, &dropout_rng);
    const nn::Matrix residual = fwd.output - t_train;
    grads.set_zero();
    nn::mlp_backward_accumulate(mlp, fwd.tape, 2.0 * inv_n * residual, grads);
    nn::adam_step(adam, params, grad_ptrs);
  }

  const nn::Matrix pred_std = nn::mlp_forward(mlp, z_test, false, nullptr).output;
  ProbeResult r;
  r.train_count = train_n;
  r.test_count = test_n;
  double se = 0.0, ae = 0.0;
  for (std::size_t i = 0; i < test_n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const double target_std = (y_test(ii) - ym.mean) / y_scale;
    const double diff = pred_std(ii, 0) - target_std;
    se += diff * diff;
    ae += std::abs(pred_std(ii, 0) * y_scale + ym.mean - y_test(ii));
  }
  r.mse = se / static_cast<double>(test_n);
  r.mae = ae / static_cast<double>(test_n);
  const Moments tm = moments(y_test, true);
  r.mean = tm.mean;
  r.std = tm.std;
  r.min = y_test.minCoeff();
  r.max = y_test.maxCoeff();
  return r;
}

PcaResult pca_fit_transform(const Points& data, int out_dim) {
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.cols();
  require(out_dim >= 1 && out_dim <= d, ErrorKind::InvariantViolation,
          "PCA output dimension must lie in [1, " + std::to_string(d) + "]");
  require(n >= out_dim && n >= 2, ErrorKind::TooFewSamples, "PCA needs at least max(2, out_dim) samples");

  PcaResult r;
  r.mean = data.colwise().mean().transpose();
  const Points centered = data.rowwise() - r.mean.transpose();
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  require(solver.info() == Eigen::Success, ErrorKind::NumericFailure, "PCA eigendecomposition failed");
  const Eigen::VectorXd values = solver.eigenvalues().cwiseMax(0.0);
  const double total = values.sum();
  require(total > 0.0, ErrorKind::DegenerateData, "data has zero variance in every direction");

  r.components.resize(out_dim, d);
  r.eigenvalues.resize(out_dim);
  for (int k = 0; k < out_dim; ++k) {
    const Eigen::Index src = d - 1 - k;  // eigenvalues come in ascending order
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v(pivot) < 0.0) v = -v;
    r.components.row(k) = v.transpose();
    r.eigenvalues(k) = values(src);
  }
  r.explained_ratio = r.eigenvalues / total;
  r.projected = centered * r.components.transpose();
  return r;
}

Points pca_reconstruct(const PcaResult& pca, const Points& projected) {
  Points out = projected * pca.components;
  out.rowwise() += pca.mean.transpose();
  return out;
}

std::pair<double, double> fit_layout_curve(double min_dist, double spread) {
  // Least squares over x in (0, 3 * spread], refined by shrinking grid search.
  constexpr int kSamples = 300;
  std::vector<double> xs(kSamples), ys(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    xs[i] = 3.0 * spread * (i + 1) / kSamples;
    ys[i] = xs[i] < min_dist ? 1.0 : std::exp(-(xs[i] - min_dist) / spread);
  }
  auto cost = [&](double a, double b) {
    double c = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      const double f = 1.0 / (1.0 + a * std::pow(xs[i], 2.0 * b));
      c += (f - ys[i]) * (f - ys[i]);
    }
    return c;
  };
  double best_a = 1.0, best_b = 1.0, best_c = cost(1.0, 1.0);
  double a_lo = 0.05, a_hi = 10.0, b_lo = 0.1, b_hi = 3.0;
  for (int round = 0; round < 8; ++round) {
    constexpr int kGrid = 24;
    for (int i = 0; i <= kGrid; ++i) {
      for (int j = 0; j <= kGrid; ++j) {
        const double a = a_lo + (a_hi - a_lo) * i / kGrid;
        const double b = b_lo + (b_hi - b_lo) * j / kGrid;
        const double c = cost(a, b);
        if (c < best_c) {
          best_c = c;
          best_a = a;
          best_b = b;
        }
      }
    }
    const double da = (a_hi - a_lo) / 6.0, db = (b_hi - b_lo) / 6.0;
    a_lo = std::max(1e-3, best_a - da);
    a_hi = best_a + da;
    b_lo = std::max(1e-3, best_b - db);
    b_hi = best_b + db;
  }
  return {best_a, best_b};
}

Points umap_lite(const Points& data, const UmapLiteConfig& config) {
  const Eigen::Index n = data.rows();
  const int k = config.n_neighbors;
  require(k >= 1, ErrorKind::InvariantViolation, "n_neighbors must be >= 1");
  require(n > k, ErrorKind::TooFewSamples,
          "umap-lite needs more samples than n_neighbors (" + std::to_string(n) + " <= " + std::to_string(k) + ")");

  // k nearest neighbours by brute force; ties broken by index.
  std::vector<std::vector<std::pair<double, Eigen::Index>>> knn(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<std::pair<double, Eigen::Index>> cand;
    cand.reserve(static_cast<std::size_t>(n - 1));
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) cand.emplace_back((data.row(i) - data.row(j)).norm(), j);
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    cand.resize(static_cast<std::size_t>(k));
    knn[static_cast<std::size_t>(i)] = std::move(cand);
  }

  // Fuzzy membership: w = exp(-(d - rho) / sigma) with sum_j w = log2(k).
  const double target = std::log2(static_cast<double>(std::max(k, 2)));
  std::map<std::pair<Eigen::Index, Eigen::Index>, double> directed;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& nb = knn[static_cast<std::size_t>(i)];
    double rho = 0.0;
    for (const auto& [dist, j] : nb)
      if (dist > 0.0) {
        rho = dist;
        break;
      }
    double lo = 0.0, hi = std::numeric_limits<double>::infinity(), sigma = 1.0;
    for (int it = 0; it < 64; ++it) {
      double sum = 0.0;
      for (const auto& [dist, j] : nb) sum += std::exp(-std::max(0.0, dist - rho) / sigma);
      if (std::abs(sum - target) < 1e-6) break;
      if (sum > target) {
        hi = sigma;
        sigma = (lo + hi) / 2.0;
      } else {
        lo = sigma;
        sigma = std::isinf(hi) ? sigma * 2.0 : (lo + hi) / 2.0;
      }
    }
    sigma = std::max(sigma, 1e-3 * (rho > 0.0 ? rho : 1.0));
    for (const auto& [dist, j] : nb) directed[{i, j}] = std::exp(-std::max(0.0, dist - rho) / sigma);
  }
  struct Edge {
    Eigen::Index i, j;
    double w;
  };
  std::vector<Edge> edges;
  for (const auto& [key, w] : directed) {
    const auto [i, j] = key;
    auto rev = directed.find({j, i});
    const double w_rev = rev == directed.end() ? 0.0 : rev->second;
    if (rev != directed.end() && j < i) continue;  // already emitted from the other side
    edges.push_back({std::min(i, j), std::max(i, j), w + w_rev - w * w_rev});
  }
  double w_max = 0.0;
  for (const auto& e : edges) w_max = std::max(w_max, e.w);

  // Spectral-free initialisation: PCA scaled into [-10, 10].
  const int dim = config.out_dim;
  Points y(n, dim);
  Rng rng(config.seed);
  try {
    y = pca_fit_transform(data, std::min<int>(dim, static_cast<int>(data.cols()))).projected;
    if (y.cols() < dim) y.conservativeResize(n, dim);
  } catch (const Error&) {
    y.setZero();
  }
  std::uniform_real_distribution<double> jitter(-1e-4, 1e-4);
  const double scale = y.cwiseAbs().maxCoeff();
  if (scale > 0.0) y *= 10.0 / scale;
  for (Eigen::Index i = 0; i < n; ++i)
    for (int c = 0; c < dim; ++c) y(i, c) += jitter(rng);

  const auto [a, b] = fit_layout_curve(config.min_dist);
  std::vector<double> every(edges.size()), next_at(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    every[e] = w_max / edges[e].w;
    next_at[e] = every[e];
  }
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  auto clip = [](double g) { return std::clamp(g, -4.0, 4.0); };
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const double alpha = 1.0 - static_cast<double>(epoch - 1) / config.epochs;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (next_at[e] > epoch) continue;
      next_at[e] += every[e];
      const Eigen::Index i = edges[e].i, j = edges[e].j;
      Eigen::RowVectorXd diff = y.row(i) - y.row(j);
      double d2 = diff.squaredNorm();
      if (d2 > 0.0) {
        const double coef = -2.0 * a * b * std::pow(d2, b - 1.0) / (1.0 + a * std::pow(d2, b));
        for (int c = 0; c < dim; ++c) {
          const double g = clip(coef * diff(c)) * alpha;
          y(i, c) += g;
          y(j, c) -= g;
        }
      }
      for (int s = 0; s < config.negative_samples; ++s) {
        const Eigen::Index m = pick(rng);
        if (m == i) continue;
        diff = y.row(i) - y.row(m);
        d2 = diff.squaredNorm();
        const double coef = d2 > 0.0 ? 2.0 * b / ((0.001 + d2) * (1.0 + a * std::pow(d2, b))) : 0.0;
        for (int c = 0; c < dim; ++c) y(i, c) += (coef > 0.0 ? clip(coef * diff(c)) : 4.0) * alpha;
      }
    }
  }
  return y;
}

std::vector<Merge> ward_linkage(const Points& points) {
  const auto n = static_cast<std::size_t>(points.rows());
  std::vector<Merge> merges;
  if (n < 2) return merges;
  merges.reserve(n - 1);
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d2 =
          (points.row(static_cast<Eigen::Index>(i)) - points.row(static_cast<Eigen::Index>(j))).squaredNorm();
      dist[i * n + j] = d2;
      dist[j * n + i] = d2;
    }
  std::vector<double> size(n, 1.0);
  std::vector<char> active(n, 1);
  std::vector<std::size_t> nearest(n, 0);
  std::vector<double> nearest_d(n, std::numeric_limits<double>::infinity());

  auto refresh = [&](std::size_t i) {
    nearest_d[i] = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !active[j]) continue;
      if (dist[i * n + j] < nearest_d[i]) {
        nearest_d[i] = dist[i * n + j];
        nearest[i] = j;
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i) refresh(i);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t best_a = n, best_b = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      const std::size_t lo = std::min(i, nearest[i]), hi = std::max(i, nearest[i]);
      if (nearest_d[i] < best || (nearest_d[i] == best && (lo < best_a || (lo == best_a && hi < best_b)))) {
        best = nearest_d[i];
        best_a = lo;
        best_b = hi;
      }
    }
    const std::size_t a = best_a, b = best_b;
    merges.push_back({a, b, best});
    const double d_ab = dist[a * n + b];
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a || k == b) continue;
      const double updated =
          ((size[a] + size[k]) * dist[a * n + k] + (size[b] + size[k]) * dist[b * n + k] - size[k] * d_ab) /
          (size[a] + size[b] + size[k]);
      dist[a * n + k] = updated;
      dist[k * n + a] = updated;
    }
    size[a] += size[b];
    active[b] = 0;
    refresh(a);
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a) continue;
      if (nearest[k] == a || nearest[k] == b) {
        refresh(k);
      } else if (dist[k * n + a] < nearest_d[k] || (dist[k * n + a] == nearest_d[k] && a < nearest[k])) {
        nearest_d[k] = dist[k * n + a];
        nearest[k] = a;
      }
    }
  }
  return merges;
}

std::vector<int> cut_dendrogram(std::size_t n, std::span<const Merge> merges, std::size_t k) {
  require(k >= 1 && k <= n, ErrorKind::BadK, "cluster count must lie in [1, n]");
  require(merges.size() + 1 >= n, ErrorKind::InvariantViolation, "incomplete merge sequence");
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t m = 0; m < n - k; ++m) parent[find(merges[m].b)] = find(merges[m].a);
  std::vector<int> labels(n, -1);
  std::unordered_map<std::size_t, int> ids;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = ids.emplace(find(i), static_cast<int>(ids.size()));
    labels[i] = it->second;
  }
  return labels;
}

std::vector<int> agglomerative_cluster(const Points& points, std::size_t k) {
  const auto n = static_cast<std::size_t>(points.rows());
  require(k >= 2 && k <= n, ErrorKind::BadK,
          "k=" + std::to_string(k) + " outside [2, " + std::to_string(n) + "]");
  const auto merges = ward_linkage(points);
  return cut_dendrogram(n, merges, k);
}

double silhouette_score(const Points& points, std::span<const int> assignments) {
  const auto n = static_cast<std::size_t>(points.rows());
  require(assignments.size() == n, ErrorKind::ShapeMismatch, "assignment count differs from point count");
  std::unordered_map<int, std::size_t> dense;
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = dense.emplace(assignments[i], dense.size());
    label[i] = it->second;
  }
  const std::size_t clusters = dense.size();
  require(clusters >= 2, ErrorKind::SingleCluster, "silhouette needs at least two clusters");
  std::vector<double> count(clusters, 0.0);
  for (std::size_t l : label) count[l] += 1.0;

  double total = 0.0;
  std::vector<double> sums(clusters);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      sums[label[j]] += (points.row(static_cast<Eigen::Index>(i)) - points.row(static_cast<Eigen::Index>(j))).norm();
    }
    const std::size_t own = label[i];
    if (count[own] <= 1.0) continue;  // singleton scores 0
    const double a = sums[own] / (count[own] - 1.0);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < clusters; ++c)
      if (c != own) b = std::min(b, sums[c] / count[c]);
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

ClusterReport select_clusters(const Points& points, std::size_t k_min, std::size_t k_max) {
  const auto n = static_cast<std::size_t>(points.rows());
  require(k_min >= 2 && k_min <= k_max, ErrorKind::BadK, "invalid candidate range");
  require(n > k_max, ErrorKind::TooFewSamples,
          "cluster selection over k <= " + std::to_string(k_max) + " needs at least " + std::to_string(k_max + 1) +
              " points, got " + std::to_string(n));
  const auto merges = ward_linkage(points);
  ClusterReport report;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = k_min; k <= k_max; ++k) {
    auto labels = cut_dendrogram(n, merges, k);
    const double s = silhouette_score(points, labels);
    report.candidates.push_back(k);
    report.silhouettes.push_back(s);
    if (s > best) {
      best = s;
      report.selected = k;
      report.selected_silhouette = s;
      report.assignments = std::move(labels);
    }
  }
  return report;
}

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  require(a.size() == b.size(), ErrorKind::ShapeMismatch, "label vectors differ in length");
  const auto n = static_cast<double>(a.size());
  std::map<std::pair<int, int>, double> table;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  auto comb2 = [](double x) { return x * (x - 1.0) / 2.0; };
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [key, c] : table) index += comb2(c);
  for (const auto& [key, c] : rows) sum_rows += comb2(c);
  for (const auto& [key, c] : cols) sum_cols += comb2(c);
  const double expected = sum_rows * sum_cols / comb2(n);
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace ssg
