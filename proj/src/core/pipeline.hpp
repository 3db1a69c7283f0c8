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

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/config.hpp"

namespace ssg::pipeline {

namespace fs = std::filesystem;

struct Context {
  Config config = Config::defaults();
  bool force = false;  // accept upstream artifacts written under another config
  std::function<void(const std::string&)> log;
};

// Raises ConfigMismatch unless the artifact hash matches or `force` is set.
void check_hash(const Context& ctx, const std::string& artifact_hash, const std::string& artifact);

// Tracks CSV + map JSON -> scenes JSON. The location label defaults to the map id.
void ingest(const Context& ctx, const fs::path& tracks, const fs::path& map, const fs::path& out,
            const std::optional<std::string>& location = std::nullopt);

// Writes maps/<id>.json, tracks/<id>.csv and scenes.json (re-ingested from the tracks).
void generate(const Context& ctx, const fs::path& out_dir);

struct BuildGraphsSummary {
  std::size_t built = 0;
  std::size_t failed = 0;
  fs::path error_log;
};

// Failing scenes are skipped and listed in "<out stem>.errors.log" beside the output.
BuildGraphsSummary build_graphs(const Context& ctx, const fs::path& scenes, const std::vector<fs::path>& maps,
                                const fs::path& out);

// Writes loss_history.csv, split.json, holdout_graphs.json, checkpoints/epoch_NNNN.json per
// improvement, checkpoint_best.json and checkpoint_final.json into out_dir.
void train(const Context& ctx, const fs::path& graphs, const fs::path& scenes, const std::vector<fs::path>& maps,
           const fs::path& out_dir);

void embed(const Context& ctx, const fs::path& checkpoint, const fs::path& graphs, const fs::path& out);

// Triplet accuracy per location and regression probes on graph-level features.
void evaluate(const Context& ctx, const fs::path& checkpoint, const fs::path& holdout_graphs, const fs::path& scenes,
              const std::vector<fs::path>& maps, const fs::path& out);

// Writes cluster_report.json and assignments.csv into out_dir.
void cluster(const Context& ctx, const fs::path& embeddings, const fs::path& out_dir);

// `input` is an embeddings CSV (PCA to 2-d) or a cluster report JSON. `color_by` is
// "cluster" (report input only) or a graph-level feature name, which needs `graphs`.
void plot(const Context& ctx, const fs::path& input, const std::string& color_by,
          const std::optional<fs::path>& graphs, const fs::path& out);

}  // namespace ssg::pipeline
