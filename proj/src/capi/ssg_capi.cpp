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

#include "ssg/ssg.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/encoder.hpp"
#include "core/error.hpp"
#include "core/io.hpp"
#include "core/pipeline.hpp"
#include "core/scene_graph.hpp"
#include "core/training.hpp"

struct ssg_config {
  ssg::Config config;
};

struct ssg_map {
  ssg::LaneMap map;
};

struct ssg_encoder {
  ssg::EncoderParams params;
};

namespace {

thread_local std::string g_last_error;

ssg_status status_for(ssg::ErrorKind kind) {
  using ssg::ErrorKind;
  switch (kind) {
    case ErrorKind::Usage:
    case ErrorKind::BadK:
      return SSG_ERR_USAGE;
    case ErrorKind::NumericFailure:
      return SSG_ERR_NUMERIC;
    case ErrorKind::TapeMismatch:
      return SSG_ERR_INTERNAL;
    default:
      return SSG_ERR_DATA;
  }
}

template <class F>
ssg_status guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SSG_OK;
  } catch (const ssg::Error& e) {
    g_last_error = e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SSG_ERR_INTERNAL;
  } catch (const std::filesystem::filesystem_error& e) {
    g_last_error = std::string("Io: ") + e.what();
    return SSG_ERR_DATA;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return SSG_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) ssg::fail(ssg::ErrorKind::Usage, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ssg::pipeline::Context make_context(const ssg_config* config, const ssg_run_options* options) {
  need(config, "config");
  ssg::pipeline::Context ctx;
  ctx.config = config->config;
  if (options != nullptr) {
    ctx.force = options->force != 0;
    if (options->log != nullptr) {
      auto fn = options->log;
      void* user = options->user_data;
      ctx.log = [fn, user](const std::string& msg) { fn(msg.c_str(), user); };
    }
  }
  return ctx;
}

std::vector<std::filesystem::path> path_list(const char* const* items, size_t count) {
  if (count > 0) need(items, "maps");
  std::vector<std::filesystem::path> out;
  for (size_t i = 0; i < count; ++i) {
    need(items[i], "map path");
    out.emplace_back(items[i]);
  }
  return out;
}

}  // namespace

extern "C" {

const char* ssg_version(void) { return "0.1.0"; }

const char* ssg_last_error(void) { return g_last_error.c_str(); }

void ssg_free_string(char* s) { std::free(s); }

ssg_status ssg_config_create(ssg_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new ssg_config{ssg::Config::defaults()};
  });
}

ssg_status ssg_config_load(const char* path, ssg_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto c = ssg::Config::load(path);
    c.validate();
    *out = new ssg_config{std::move(c)};
  });
}

ssg_status ssg_config_set(ssg_config* config, const char* assignment) {
  return guarded([&] {
    need(config, "config");
    need(assignment, "assignment");
    auto c = config->config;
    c.set_assignment(assignment);
    c.validate();
    config->config = std::move(c);
  });
}

ssg_status ssg_config_hash(const ssg_config* config, char** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    *out = dup_string(config->config.hash());
  });
}

ssg_status ssg_config_dump(const ssg_config* config, char** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    *out = dup_string(config->config.document().dump(2) + "\n");
  });
}

void ssg_config_destroy(ssg_config* config) { delete config; }

ssg_status ssg_run_ingest(const ssg_config* config, const ssg_run_options* options, const char* tracks_csv,
                          const char* map_json, const char* location, const char* out_scenes) {
  return guarded([&] {
    need(tracks_csv, "tracks_csv");
    need(map_json, "map_json");
    need(out_scenes, "out_scenes");
    std::optional<std::string> loc;
    if (location != nullptr) loc = location;
    ssg::pipeline::ingest(make_context(config, options), tracks_csv, map_json, out_scenes, loc);
  });
}

ssg_status ssg_run_generate(const ssg_config* config, const ssg_run_options* options, const char* out_dir) {
  return guarded([&] {
    need(out_dir, "out_dir");
    ssg::pipeline::generate(make_context(config, options), out_dir);
  });
}

ssg_status ssg_run_build_graphs(const ssg_config* config, const ssg_run_options* options, const char* scenes,
                                const char* const* maps, size_t map_count, const char* out_graphs) {
  return guarded([&] {
    need(scenes, "scenes");
    need(out_graphs, "out_graphs");
    ssg::pipeline::build_graphs(make_context(config, options), scenes, path_list(maps, map_count), out_graphs);
  });
}

ssg_status ssg_run_train(const ssg_config* config, const ssg_run_options* options, const char* graphs,
                         const char* scenes, const char* const* maps, size_t map_count, const char* out_dir) {
  return guarded([&] {
    need(graphs, "graphs");
    need(scenes, "scenes");
    need(out_dir, "out_dir");
    ssg::pipeline::train(make_context(config, options), graphs, scenes, path_list(maps, map_count), out_dir);
  });
}

ssg_status ssg_run_embed(const ssg_config* config, const ssg_run_options* options, const char* checkpoint,
                         const char* graphs, const char* out_csv) {
  return guarded([&] {
    need(checkpoint, "checkpoint");
    need(graphs, "graphs");
    need(out_csv, "out_csv");
    ssg::pipeline::embed(make_context(config, options), checkpoint, graphs, out_csv);
  });
}

ssg_status ssg_run_eval(const ssg_config* config, const ssg_run_options* options, const char* checkpoint,
                        const char* holdout_graphs, const char* scenes, const char* const* maps, size_t map_count,
                        const char* out_report) {
  return guarded([&] {
    need(checkpoint, "checkpoint");
    need(holdout_graphs, "holdout_graphs");
    need(scenes, "scenes");
    need(out_report, "out_report");
    ssg::pipeline::evaluate(make_context(config, options), checkpoint, holdout_graphs, scenes,
                            path_list(maps, map_count), out_report);
  });
}

ssg_status ssg_run_cluster(const ssg_config* config, const ssg_run_options* options, const char* embeddings,
                           const char* out_dir) {
  return guarded([&] {
    need(embeddings, "embeddings");
    need(out_dir, "out_dir");
    ssg::pipeline::cluster(make_context(config, options), embeddings, out_dir);
  });
}

ssg_status ssg_run_plot(const ssg_config* config, const ssg_run_options* options, const char* input,
                        const char* color_by, const char* graphs, const char* out_svg) {
  return guarded([&] {
    need(input, "input");
    need(color_by, "color_by");
    need(out_svg, "out_svg");
    std::optional<std::filesystem::path> g;
    if (graphs != nullptr) g = graphs;
    ssg::pipeline::plot(make_context(config, options), input, color_by, g, out_svg);
  });
}

ssg_status ssg_map_load(const char* path, ssg_map** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new ssg_map{ssg::io::load_map(path)};
  });
}

size_t ssg_map_lane_count(const ssg_map* map) { return map == nullptr ? 0 : map->map.lanes().size(); }

void ssg_map_destroy(ssg_map* map) { delete map; }

ssg_status ssg_graph_from_scene_json(const ssg_config* config, const ssg_map* map, const char* scene_json,
                                     char** out_graph_json) {
  return guarded([&] {
    need(config, "config");
    need(map, "map");
    need(scene_json, "scene_json");
    need(out_graph_json, "out_graph_json");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(scene_json);
    } catch (const nlohmann::json::exception& e) {
      ssg::fail(ssg::ErrorKind::Parse, std::string("scene JSON: ") + e.what());
    }
    const auto scene = ssg::io::scene_from_json(j);
    const auto graph = ssg::build_scene_graph(scene, map->map, config->config.graph_options());
    *out_graph_json = dup_string(ssg::io::graph_to_json(graph).dump());
  });
}

ssg_status ssg_encoder_load(const char* checkpoint, ssg_encoder** out) {
  return guarded([&] {
    need(checkpoint, "checkpoint");
    need(out, "out");
    *out = new ssg_encoder{ssg::io::load_checkpoint(checkpoint).params};
  });
}

ssg_status ssg_encoder_create(const ssg_config* config, ssg_encoder** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    *out = new ssg_encoder{ssg::EncoderParams::init(config->config.encoder(), config->config.encoder_init_seed())};
  });
}

size_t ssg_encoder_embedding_dim(const ssg_encoder* encoder) {
  return encoder == nullptr ? 0 : static_cast<size_t>(encoder->params.config.embedding);
}

ssg_status ssg_encoder_embed_graph_json(const ssg_encoder* encoder, const char* graph_json, double* out,
                                        size_t out_len) {
  return guarded([&] {
    need(encoder, "encoder");
    need(graph_json, "graph_json");
    need(out, "out");
    const auto dim = static_cast<size_t>(encoder->params.config.embedding);
    if (out_len < dim)
      ssg::fail(ssg::ErrorKind::Usage, "output buffer holds " + std::to_string(out_len) + " values, need " +
                                           std::to_string(dim));
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(graph_json);
    } catch (const nlohmann::json::exception& e) {
      ssg::fail(ssg::ErrorKind::Parse, std::string("graph JSON: ") + e.what());
    }
    const auto e = ssg::encode(encoder->params, ssg::io::graph_from_json(j));
    for (size_t k = 0; k < dim; ++k) out[k] = e[static_cast<Eigen::Index>(k)];
  });
}

void ssg_encoder_destroy(ssg_encoder* encoder) { delete encoder; }

ssg_status ssg_euclidean_distance(const double* a, const double* b, size_t dim, double* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    const auto n = static_cast<Eigen::Index>(dim);
    *out = ssg::euclidean_distance(Eigen::Map<const Eigen::VectorXd>(a, n), Eigen::Map<const Eigen::VectorXd>(b, n));
  });
}

ssg_status ssg_triplet_loss(const double* anchor, const double* positive, const double* negative, size_t dim,
                            double margin, double* out) {
  return guarded([&] {
    need(anchor, "anchor");
    need(positive, "positive");
    need(negative, "negative");
    need(out, "out");
    const auto n = static_cast<Eigen::Index>(dim);
    *out = ssg::triplet_loss(Eigen::Map<const Eigen::VectorXd>(anchor, n), Eigen::Map<const Eigen::VectorXd>(positive, n),
                             Eigen::Map<const Eigen::VectorXd>(negative, n), margin);
  });
}

}  // extern "C"
