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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/encoder.hpp"
#include "core/nn.hpp"
#include "core/scene.hpp"
#include "core/scene_graph.hpp"
#include "core/training.hpp"

namespace ssg::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_text(const fs::path& path);
// Writes through a temporary file so readers never see partial output.
void write_text(const fs::path& path, const std::string& text);
json read_json(const fs::path& path);
void write_json(const fs::path& path, const json& j);

// ---- lane maps ------------------------------------------------------------------

json map_to_json(const LaneMap& map);
// `fallback_id` is used when the document has no "id".
LaneMap map_from_json(const json& j, const std::string& fallback_id);
LaneMap load_map(const fs::path& path);
void save_map(const fs::path& path, const LaneMap& map);

// Loads map files, and every *.json inside directories, keyed by map id.
std::map<std::string, LaneMap> load_maps(const std::vector<fs::path>& paths);

// ---- scenes and graphs ------------------------------------------------------------

json scene_to_json(const TrafficScene& scene);
TrafficScene scene_from_json(const json& j);

struct SceneFile {
  std::string config_hash;
  std::vector<TrafficScene> scenes;
};

SceneFile load_scenes(const fs::path& path);
void save_scenes(const fs::path& path, const SceneFile& file);

json graph_to_json(const SceneGraph& graph);
SceneGraph graph_from_json(const json& j);

struct GraphFile {
  std::string config_hash;
  std::vector<SceneGraph> graphs;
};

GraphFile load_graphs(const fs::path& path);
void save_graphs(const fs::path& path, const GraphFile& file);

// ---- checkpoints ----------------------------------------------------------------------

inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  std::string config_hash;
  std::size_t epoch = 0;
  EncoderParams params;
  std::optional<nn::AdamState> adam;
};

json matrix_to_json(const nn::Matrix& m);
nn::Matrix matrix_from_json(const json& j);

json checkpoint_to_json(const Checkpoint& c);
Checkpoint checkpoint_from_json(const json& j);
Checkpoint load_checkpoint(const fs::path& path);
void save_checkpoint(const fs::path& path, const Checkpoint& c);

// ---- tracks CSV ---------------------------------------------------------------------

struct TrackRow {
  std::string track_id;
  long long frame_id = 0;
  long long timestamp_ms = 0;
  std::string agent_type;
  double x = 0.0, y = 0.0, vx = 0.0, vy = 0.0;
  std::optional<double> psi_rad;
  std::size_t line = 0;
};

std::vector<TrackRow> read_tracks(std::istream& in, const std::string& source_name);
std::vector<TrackRow> read_tracks(const fs::path& path);
void write_tracks(std::ostream& out, const std::vector<TrackRow>& rows);

// Groups rows into one scene per selected frame: (frame - first_frame) % stride == 0.
// Scene ids are "<location>_f<frame>".
std::vector<TrafficScene> snapshot_scenes(const std::vector<TrackRow>& rows, const std::string& location,
                                          const std::string& map_ref, std::size_t stride,
                                          const std::string& source_name);

// One frame of rows per scene, frame ids `first_frame + i * stride`.
std::vector<TrackRow> scenes_to_tracks(const std::vector<TrafficScene>& scenes, long long first_frame,
                                       std::size_t stride);

// ---- embeddings and histories ----------------------------------------------------------

struct EmbeddingTable {
  std::string config_hash;
  std::vector<std::string> scene_ids;
  std::vector<std::string> location_labels;
  std::vector<Embedding> embeddings;
};

EmbeddingTable load_embeddings(const fs::path& path);
void save_embeddings(const fs::path& path, const EmbeddingTable& table);

void save_loss_history(const fs::path& path, const std::vector<EpochRecord>& history,
                       const std::string& config_hash);

// Shortest round-trip text for a double.
std::string format_double(double v);

}  // namespace ssg::io
