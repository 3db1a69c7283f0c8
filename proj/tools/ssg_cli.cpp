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

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssg/ssg.h"

namespace {

struct ConfigHandle {
  ssg_config* ptr = nullptr;
  ~ConfigHandle() { ssg_config_destroy(ptr); }
};

void print_log(const char* message, void* user_data) {
  if (*static_cast<bool*>(user_data)) return;
  std::fprintf(stderr, "%s\n", message);
}

int report(ssg_status status) {
  if (status != SSG_OK) std::fprintf(stderr, "error: %s\n", ssg_last_error());
  return static_cast<int>(status);
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic scene graph embedding pipeline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ssg_version());

  std::string config_path;
  std::vector<std::string> overrides;
  bool force = false;
  bool quiet = false;
  app.add_option("-c,--config", config_path, "JSON config file (overlays the defaults)")->check(CLI::ExistingFile);
  app.add_option("-s,--set", overrides, "Override a config value, e.g. training.epochs=50");
  app.add_flag("--force", force, "Accept upstream artifacts written under a different config");
  app.add_flag("-q,--quiet", quiet, "Suppress progress output");

  std::string tracks, map, location, out, scenes, graphs, checkpoint, embeddings, input, color_by;
  std::vector<std::string> maps;

  auto* ingest = app.add_subcommand("ingest", "Snapshot a tracks CSV into scenes");
  ingest->add_option("--tracks", tracks, "Tracks CSV")->required()->check(CLI::ExistingFile);
  ingest->add_option("--map", map, "Lane map JSON")->required()->check(CLI::ExistingFile);
  ingest->add_option("--location", location, "Location label (defaults to the map id)");
  ingest->add_option("-o,--out", out, "Output scenes JSON")->required();

  auto* generate = app.add_subcommand("generate", "Generate synthetic maps, tracks and scenes");
  generate->add_option("-o,--out", out, "Output directory")->required();

  auto* build = app.add_subcommand("build-graphs", "Build scene graphs for a scenes file");
  build->add_option("--scenes", scenes, "Scenes JSON")->required()->check(CLI::ExistingFile);
  build->add_option("--map", maps, "Map JSON files or directories")->required()->check(CLI::ExistingPath);
  build->add_option("-o,--out", out, "Output graphs JSON")->required();

  auto* train = app.add_subcommand("train", "Train the encoder with the triplet loss");
  train->add_option("--graphs", graphs, "Graphs JSON")->required()->check(CLI::ExistingFile);
  train->add_option("--scenes", scenes, "Scenes JSON the graphs were built from")->required()->check(CLI::ExistingFile);
  train->add_option("--map", maps, "Map JSON files or directories")->required()->check(CLI::ExistingPath);
  train->add_option("-o,--out", out, "Output directory")->required();

  auto* embed = app.add_subcommand("embed", "Write embeddings for a graphs file");
  embed->add_option("--checkpoint", checkpoint, "Checkpoint JSON")->required()->check(CLI::ExistingFile);
  embed->add_option("--graphs", graphs, "Graphs JSON")->required()->check(CLI::ExistingFile);
  embed->add_option("-o,--out", out, "Output embeddings CSV")->required();

  auto* eval = app.add_subcommand("eval", "Triplet accuracy and probe report on holdout graphs");
  eval->add_option("--checkpoint", checkpoint, "Checkpoint JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--graphs", graphs, "Holdout graphs JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--scenes", scenes, "Scenes JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--map", maps, "Map JSON files or directories")->required()->check(CLI::ExistingPath);
  eval->add_option("-o,--out", out, "Output report JSON")->required();

  auto* cluster = app.add_subcommand("cluster", "Reduce, cluster and score embeddings");
  cluster->add_option("--embeddings", embeddings, "Embeddings CSV")->required()->check(CLI::ExistingFile);
  cluster->add_option("-o,--out", out, "Output directory")->required();

  auto* plot = app.add_subcommand("plot", "Scatter plot of embeddings or a cluster report");
  plot->add_option("--input", input, "Embeddings CSV or cluster report JSON")->required()->check(CLI::ExistingFile);
  plot->add_option("--color-by", color_by, "'cluster' or one of E_lon, E_lat, E_int, E, V_car, mean_speed")
      ->required();
  plot->add_option("--graphs", graphs, "Graphs JSON for feature colouring")->check(CLI::ExistingFile);
  plot->add_option("-o,--out", out, "Output SVG")->required();

  auto* show = app.add_subcommand("config", "Print the effective configuration and its hash");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return SSG_ERR_USAGE;
  }

  ConfigHandle cfg;
  ssg_status st = config_path.empty() ? ssg_config_create(&cfg.ptr) : ssg_config_load(config_path.c_str(), &cfg.ptr);
  if (st != SSG_OK) return report(st == SSG_ERR_DATA ? SSG_ERR_USAGE : st);
  for (const auto& o : overrides)
    if ((st = ssg_config_set(cfg.ptr, o.c_str())) != SSG_OK) return report(st);

  ssg_run_options opts{force ? 1 : 0, print_log, &quiet};
  const auto map_ptrs = c_strings(maps);

  if (*show) {
    char* dump = nullptr;
    char* hash = nullptr;
    if ((st = ssg_config_dump(cfg.ptr, &dump)) != SSG_OK) return report(st);
    if ((st = ssg_config_hash(cfg.ptr, &hash)) != SSG_OK) {
      ssg_free_string(dump);
      return report(st);
    }
    std::printf("%s# config_hash=%s\n", dump, hash);
    ssg_free_string(dump);
    ssg_free_string(hash);
    return 0;
  }
  if (*ingest)
    st = ssg_run_ingest(cfg.ptr, &opts, tracks.c_str(), map.c_str(), location.empty() ? nullptr : location.c_str(),
                        out.c_str());
  else if (*generate)
    st = ssg_run_generate(cfg.ptr, &opts, out.c_str());
  else if (*build)
    st = ssg_run_build_graphs(cfg.ptr, &opts, scenes.c_str(), map_ptrs.data(), map_ptrs.size(), out.c_str());
  else if (*train)
    st = ssg_run_train(cfg.ptr, &opts, graphs.c_str(), scenes.c_str(), map_ptrs.data(), map_ptrs.size(), out.c_str());
  else if (*embed)
    st = ssg_run_embed(cfg.ptr, &opts, checkpoint.c_str(), graphs.c_str(), out.c_str());
  else if (*eval)
    st = ssg_run_eval(cfg.ptr, &opts, checkpoint.c_str(), graphs.c_str(), scenes.c_str(), map_ptrs.data(),
                      map_ptrs.size(), out.c_str());
  else if (*cluster)
    st = ssg_run_cluster(cfg.ptr, &opts, embeddings.c_str(), out.c_str());
  else if (*plot)
    st = ssg_run_plot(cfg.ptr, &opts, input.c_str(), color_by.c_str(), graphs.empty() ? nullptr : graphs.c_str(),
                      out.c_str());
  return report(st);
}
