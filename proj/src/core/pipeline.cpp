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

#include "core/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "core/analysis.hpp"
#include "core/encoder.hpp"
#include "core/error.hpp"
#include "core/io.hpp"
#include "core/random.hpp"
#include "core/scene_graph.hpp"
#include "core/svg.hpp"
#include "core/synthetic.hpp"
#include "core/training.hpp"

namespace ssg::pipeline {

using nlohmann::json;

namespace {

void say(const Context& ctx, const std::string& msg) {
  if (ctx.log) ctx.log(msg);
}

// Scenes, maps and graphs joined by scene id.
struct Corpus {
  std::vector<TrafficScene> scenes;
  std::map<std::string, LaneMap> maps;
  std::vector<SceneGraph> graphs;
  std::vector<SceneSample> samples;  // parallel to graphs
};

void load_corpus(const Context& ctx, Corpus& c, const fs::path& graphs, const fs::path& scenes,
                 const std::vector<fs::path>& maps) {
  auto gf = io::load_graphs(graphs);
  check_hash(ctx, gf.config_hash, graphs.string());
  auto sf = io::load_scenes(scenes);
  check_hash(ctx, sf.config_hash, scenes.string());
  c.graphs = std::move(gf.graphs);
  c.scenes = std::move(sf.scenes);
  c.maps = io::load_maps(maps);
  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < c.scenes.size(); ++i) by_id.emplace(c.scenes[i].scene_id, i);
  c.samples.clear();
  for (const auto& g : c.graphs) {
    auto it = by_id.find(g.scene_id);
    require(it != by_id.end(), ErrorKind::Parse,
            "graph '" + g.scene_id + "' has no matching scene in " + scenes.string());
    const TrafficScene& s = c.scenes[it->second];
    auto m = c.maps.find(s.map_ref);
    require(m != c.maps.end(), ErrorKind::Parse, "scene '" + s.scene_id + "' references unknown map '" + s.map_ref + "'");
    c.samples.push_back({&s, &m->second, &g});
  }
}

json matrix_rows(const Points& p) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index k = 0; k < p.cols(); ++k) r.push_back(p(i, k));
    rows.push_back(r);
  }
  return rows;
}

std::string epoch_name(std::size_t epoch) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "epoch_%04zu.json", epoch);
  return buf;
}

std::vector<int> labels_to_ids(const std::vector<std::string>& labels) {
  std::map<std::string, int> ids;
  std::vector<int> out;
  for (const auto& l : labels) {
    auto [it, inserted] = ids.emplace(l, static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

void check_hash(const Context& ctx, const std::string& artifact_hash, const std::string& artifact) {
  const std::string expected = ctx.config.hash();
  if (artifact_hash == expected) return;
  if (ctx.force) {
    say(ctx, "warning: " + artifact + " was written under config " + artifact_hash + ", current is " + expected);
    return;
  }
  fail(ErrorKind::ConfigMismatch, artifact + " was written under config '" + artifact_hash + "', current config is '" +
                                      expected + "' (use --force to accept)");
}

void ingest(const Context& ctx, const fs::path& tracks, const fs::path& map_path, const fs::path& out,
            const std::optional<std::string>& location) {
  const LaneMap map = io::load_map(map_path);
  const auto rows = io::read_tracks(tracks);
  io::SceneFile file;
  file.config_hash = ctx.config.hash();
  file.scenes = io::snapshot_scenes(rows, location.value_or(map.id()), map.id(), ctx.config.frame_stride(),
                                    tracks.string());
  io::save_scenes(out, file);
  say(ctx, "ingested " + std::to_string(file.scenes.size()) + " scenes from " + std::to_string(rows.size()) +
               " track rows");
}

void generate(const Context& ctx, const fs::path& out_dir) {
  const auto& cfg = ctx.config;
  const auto ds = generate_dataset(cfg.synthetic_counts(), cfg.synthetic_seed(), cfg.synthetic());
  const std::string hash = cfg.hash();
  const std::size_t stride = cfg.frame_stride();

  std::map<std::string, std::vector<TrafficScene>> by_map;
  for (const auto& s : ds.scenes) by_map[s.map_ref].push_back(s);

  io::SceneFile all;
  all.config_hash = hash;
  for (const auto& [id, map] : ds.maps) {
    json jm = io::map_to_json(map);
    jm["config_hash"] = hash;
    const fs::path map_path = out_dir / "maps" / (id + ".json");
    io::write_json(map_path, jm);

    const fs::path track_path = out_dir / "tracks" / (id + ".csv");
    std::ostringstream csv;
    csv << "# config_hash=" << hash << '\n';
    io::write_tracks(csv, io::scenes_to_tracks(by_map[id], 0, stride));
    io::write_text(track_path, csv.str());

    std::istringstream back(csv.str());
    auto scenes = io::snapshot_scenes(io::read_tracks(back, track_path.string()), id, id, stride, track_path.string());
    all.scenes.insert(all.scenes.end(), std::make_move_iterator(scenes.begin()),
                      std::make_move_iterator(scenes.end()));
  }
  io::save_scenes(out_dir / "scenes.json", all);
  say(ctx, "generated " + std::to_string(all.scenes.size()) + " scenes on " + std::to_string(ds.maps.size()) + " maps");
}

BuildGraphsSummary build_graphs(const Context& ctx, const fs::path& scenes_path, const std::vector<fs::path>& maps,
                                const fs::path& out) {
  auto sf = io::load_scenes(scenes_path);
  check_hash(ctx, sf.config_hash, scenes_path.string());
  const auto map_table = io::load_maps(maps);
  const GraphOptions opts = ctx.config.graph_options();

  io::GraphFile gf;
  gf.config_hash = ctx.config.hash();
  BuildGraphsSummary summary;
  summary.error_log = out.parent_path() / (out.stem().string() + ".errors.log");
  std::ostringstream errors;
  const std::size_t n = sf.scenes.size();
  std::size_t next_report = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& scene = sf.scenes[i];
    try {
      auto m = map_table.find(scene.map_ref);
      require(m != map_table.end(), ErrorKind::Parse, "unknown map '" + scene.map_ref + "'");
      gf.graphs.push_back(build_scene_graph(scene, m->second, opts));
      ++summary.built;
    } catch (const Error& e) {
      errors << scene.scene_id << ": " << e.what() << '\n';
      ++summary.failed;
    }
    if (i + 1 >= next_report) {
      say(ctx, "build-graphs: " + std::to_string(i + 1) + "/" + std::to_string(n));
      next_report += std::max<std::size_t>(1, n / 10);
    }
  }
  io::write_text(summary.error_log, errors.str());
  require(summary.built > 0 || n == 0, ErrorKind::EmptyGraph,
          "no scene produced a graph; see " + summary.error_log.string());
  io::save_graphs(out, gf);
  if (summary.failed > 0)
    say(ctx, "warning: " + std::to_string(summary.failed) + " scenes failed; see " + summary.error_log.string());
  return summary;
}

void train(const Context& ctx, const fs::path& graphs, const fs::path& scenes, const std::vector<fs::path>& maps,
           const fs::path& out_dir) {
  const auto& cfg = ctx.config;
  const std::string hash = cfg.hash();
  const TrainConfig tc = cfg.train();
  Corpus corpus;
  load_corpus(ctx, corpus, graphs, scenes, maps);

  const auto split = split_dataset(corpus.samples.size(), cfg.split_seed(), cfg.holdout_fraction(),
                                   cfg.validation_fraction());
  auto pick = [&](const std::vector<std::size_t>& idx) {
    std::vector<SceneSample> out;
    for (auto i : idx) out.push_back(corpus.samples[i]);
    return out;
  };
  const auto train_set = pick(split.train);
  const auto val_set = pick(split.validation);

  auto ids = [&](const std::vector<std::size_t>& idx) {
    json a = json::array();
    for (auto i : idx) a.push_back(corpus.graphs[i].scene_id);
    return a;
  };
  io::write_json(out_dir / "split.json", {{"config_hash", hash},
                                          {"train", ids(split.train)},
                                          {"validation", ids(split.validation)},
                                          {"holdout", ids(split.holdout)}});
  io::GraphFile holdout;
  holdout.config_hash = hash;
  for (auto i : split.holdout) holdout.graphs.push_back(corpus.graphs[i]);
  io::save_graphs(out_dir / "holdout_graphs.json", holdout);

  say(ctx, "train: " + std::to_string(train_set.size()) + " train, " + std::to_string(val_set.size()) +
               " validation, " + std::to_string(split.holdout.size()) + " holdout scenes");

  const EncoderParams init = EncoderParams::init(tc.encoder, cfg.encoder_init_seed());
  fs::create_directories(out_dir / "checkpoints");
  TrainHooks hooks;
  hooks.on_improvement = [&](const TrainCheckpoint& c) {
    io::Checkpoint ck{hash, c.epoch, *c.params, std::nullopt};
    if (c.adam) ck.adam = *c.adam;
    io::save_checkpoint(out_dir / "checkpoints" / epoch_name(c.epoch), ck);
  };
  hooks.on_epoch = [&](const EpochRecord& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "epoch %zu/%zu train_loss %.5f val_loss %.5f val_acc %.4f", r.epoch, tc.epochs,
                  r.train_loss, r.val_loss, r.val_accuracy);
    say(ctx, buf);
  };
  hooks.warn = [&](const std::string& w) { say(ctx, "warning: " + w); };

  const TrainResult result = ssg::train(train_set, val_set, tc, init, hooks);

  io::save_loss_history(out_dir / "loss_history.csv", result.history, hash);
  io::save_checkpoint(out_dir / "checkpoint_best.json", io::Checkpoint{hash, result.best_epoch, result.best, std::nullopt});
  io::save_checkpoint(out_dir / "checkpoint_final.json",
                      io::Checkpoint{hash, result.history.empty() ? 0 : result.history.back().epoch,
                                     result.final_params, result.final_adam});
  say(ctx, "best epoch " + std::to_string(result.best_epoch));
}

void embed(const Context& ctx, const fs::path& checkpoint, const fs::path& graphs, const fs::path& out) {
  const auto ck = io::load_checkpoint(checkpoint);
  check_hash(ctx, ck.config_hash, checkpoint.string());
  const auto gf = io::load_graphs(graphs);
  check_hash(ctx, gf.config_hash, graphs.string());
  io::EmbeddingTable t;
  t.config_hash = ctx.config.hash();
  t.embeddings = encode_batch(ck.params, gf.graphs);
  for (const auto& g : gf.graphs) {
    t.scene_ids.push_back(g.scene_id);
    t.location_labels.push_back(g.location_label);
  }
  for (std::size_t i = 0; i < t.embeddings.size(); ++i)
    require(t.embeddings[i].allFinite(), ErrorKind::NumericFailure,
            "non-finite embedding for scene '" + t.scene_ids[i] + "'");
  io::save_embeddings(out, t);
  say(ctx, "embedded " + std::to_string(t.embeddings.size()) + " graphs");
}

void evaluate(const Context& ctx, const fs::path& checkpoint, const fs::path& holdout_graphs, const fs::path& scenes,
              const std::vector<fs::path>& maps, const fs::path& out) {
  const auto& cfg = ctx.config;
  const auto ck = io::load_checkpoint(checkpoint);
  check_hash(ctx, ck.config_hash, checkpoint.string());
  Corpus corpus;
  load_corpus(ctx, corpus, holdout_graphs, scenes, maps);

  const auto acc = triplet_accuracy(ck.params, corpus.samples, cfg.augment(), cfg.graph_options(), cfg.evaluation_seed());
  auto acc_json = [](const LocationAccuracy& a) {
    return json{{"count", a.count},
                {"accuracy", a.accuracy},
                {"mean_positive_distance", a.mean_positive_distance},
                {"mean_negative_distance", a.mean_negative_distance}};
  };
  json per_location = json::object();
  for (const auto& [loc, a] : acc.per_location) per_location[loc] = acc_json(a);

  const auto embeddings = stack_embeddings(encode_batch(ck.params, corpus.graphs));
  std::vector<GraphLevelFeatures> features;
  for (const auto& g : corpus.graphs) features.push_back(graph_level_features(g));
  json probes = json::object();
  for (const char* name : kGraphFeatureNames) {
    std::vector<double> y;
    for (const auto& f : features) y.push_back(graph_feature(f, name));
    try {
      const auto r = probe_regress(embeddings, y, cfg.probe(), derive_seed(cfg.probe_seed(), name));
      probes[name] = {{"mse", r.mse},   {"mae", r.mae}, {"mean", r.mean},
                      {"std", r.std},   {"min", r.min}, {"max", r.max},
                      {"train_count", r.train_count}, {"test_count", r.test_count}};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TooFewSamples) throw;
      probes[name] = {{"skipped", e.what()}};
    }
    say(ctx, std::string("probe ") + name + " done");
  }
  io::write_json(out, {{"config_hash", cfg.hash()},
                       {"checkpoint_epoch", ck.epoch},
                       {"accuracy", {{"per_location", per_location}, {"total", acc_json(acc.total)}}},
                       {"probes", probes}});
  say(ctx, "holdout triplet accuracy " + std::to_string(acc.total.accuracy));
}

void cluster(const Context& ctx, const fs::path& embeddings, const fs::path& out_dir) {
  const auto& cfg = ctx.config;
  const auto table = io::load_embeddings(embeddings);
  check_hash(ctx, table.config_hash, embeddings.string());
  const Points data = stack_embeddings(table.embeddings);
  const auto n = static_cast<std::size_t>(data.rows());
  require(n >= 3, ErrorKind::TooFewSamples, "clustering needs at least 3 embeddings");

  const std::string reduction = cfg.reduction();
  Points reduced;
  json extra = json::object();
  if (reduction == "pca") {
    const auto pca = pca_fit_transform(data, 2);
    reduced = pca.projected;
    extra["explained_ratio"] = std::vector<double>(pca.explained_ratio.data(),
                                                   pca.explained_ratio.data() + pca.explained_ratio.size());
  } else {
    reduced = umap_lite(data, cfg.umap());
  }

  std::size_t k_min = cfg.cluster_k_min();
  std::size_t k_max = cfg.cluster_k_max();
  if (k_max >= n) {
    k_max = n - 1;
    say(ctx, "warning: k_max lowered to " + std::to_string(k_max) + " for " + std::to_string(n) + " points");
  }
  require(k_min >= 2 && k_min <= k_max, ErrorKind::BadK, "invalid cluster range after clamping");
  const auto report = select_clusters(reduced, k_min, k_max);

  json curve = json::array();
  for (std::size_t i = 0; i < report.candidates.size(); ++i)
    curve.push_back({{"k", report.candidates[i]}, {"silhouette", report.silhouettes[i]}});
  const double agreement = adjusted_rand_index(report.assignments, labels_to_ids(table.location_labels));

  json j = {{"config_hash", cfg.hash()},
            {"reduction", reduction},
            {"selected_k", report.selected},
            {"selected_silhouette", report.selected_silhouette},
            {"silhouette_curve", curve},
            {"location_agreement_ari", agreement},
            {"scene_ids", table.scene_ids},
            {"location_labels", table.location_labels},
            {"assignments", report.assignments},
            {"points", matrix_rows(reduced)}};
  j.update(extra);
  io::write_json(out_dir / "cluster_report.json", j);

  std::ostringstream csv;
  csv << "# config_hash=" << cfg.hash() << '\n' << "scene_id,location_label,cluster\n";
  for (std::size_t i = 0; i < n; ++i)
    csv << table.scene_ids[i] << ',' << table.location_labels[i] << ',' << report.assignments[i] << '\n';
  io::write_text(out_dir / "assignments.csv", csv.str());
  say(ctx, "selected k=" + std::to_string(report.selected) + " silhouette " + std::to_string(report.selected_silhouette));
}

void plot(const Context& ctx, const fs::path& input, const std::string& color_by,
          const std::optional<fs::path>& graphs, const fs::path& out) {
  Points points;
  std::vector<std::string> scene_ids;
  std::vector<int> assignments;
  svg::ScatterOptions opts;
  if (input.extension() == ".json") {
    const json j = io::read_json(input);
    try {
      check_hash(ctx, j.at("config_hash").get<std::string>(), input.string());
      const auto& rows = j.at("points");
      points.resize(static_cast<Eigen::Index>(rows.size()), 2);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (int k = 0; k < 2; ++k) points(static_cast<Eigen::Index>(i), k) = rows[i].at(k).get<double>();
      scene_ids = j.at("scene_ids").get<std::vector<std::string>>();
      assignments = j.at("assignments").get<std::vector<int>>();
      opts.x_label = j.at("reduction").get<std::string>() + " 1";
      opts.y_label = j.at("reduction").get<std::string>() + " 2";
    } catch (const json::exception& e) {
      fail(ErrorKind::Parse, input.string() + ": not a cluster report: " + e.what());
    }
  } else {
    const auto table = io::load_embeddings(input);
    check_hash(ctx, table.config_hash, input.string());
    points = pca_fit_transform(stack_embeddings(table.embeddings), 2).projected;
    scene_ids = table.scene_ids;
    opts.x_label = "PC 1";
    opts.y_label = "PC 2";
  }

  std::string doc;
  if (color_by == "cluster") {
    require(!assignments.empty() || points.rows() == 0, ErrorKind::Usage,
            "colouring by cluster needs a cluster report as input");
    opts.title = "Embedding clusters";
    opts.color_label = "cluster";
    doc = svg::scatter_categorical(points, assignments, opts);
  } else {
    bool known = false;
    for (const char* name : kGraphFeatureNames) known |= color_by == name;
    require(known, ErrorKind::Usage, "unknown colour feature '" + color_by + "'");
    require(graphs.has_value(), ErrorKind::Usage, "colouring by a feature needs --graphs");
    const auto gf = io::load_graphs(*graphs);
    check_hash(ctx, gf.config_hash, graphs->string());
    std::unordered_map<std::string, const SceneGraph*> by_id;
    for (const auto& g : gf.graphs) by_id.emplace(g.scene_id, &g);
    std::vector<double> values;
    for (const auto& id : scene_ids) {
      auto it = by_id.find(id);
      require(it != by_id.end(), ErrorKind::Parse, "scene '" + id + "' is missing from " + graphs->string());
      values.push_back(graph_feature(graph_level_features(*it->second), color_by));
    }
    opts.title = "Embedding space coloured by " + color_by;
    opts.color_label = color_by;
    doc = svg::scatter_continuous(points, values, opts);
  }
  io::write_text(out, doc);
  say(ctx, "wrote " + out.string());
}

}  // namespace ssg::pipeline
