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
#include <map>
#include <string>

#include <json.hpp>

#include "core/analysis.hpp"
#include "core/synthetic.hpp"
#include "core/training.hpp"

namespace ssg {

// Declarative pipeline configuration: nested JSON sections over built-in
// defaults. Keys not present in the defaults are rejected.
class Config {
 public:
  static Config defaults();
  static Config load(const std::filesystem::path& path);

  const nlohmann::json& document() const { return json_; }

  // Overrides one value by dotted path, e.g. "training.epochs=50". The value
  // is parsed as JSON when possible and kept as a string otherwise.
  void set(const std::string& dotted_key, const std::string& value);
  void set_assignment(const std::string& assignment);

  // Reads every typed section; raises Usage on the first invalid value.
  void validate() const;

  // FNV-1a over the canonical (key-sorted) serialization.
  std::string hash() const;

  std::uint64_t seed() const;
  GraphOptions graph_options() const;
  AugmentParams augment() const;
  EncoderConfig encoder() const;
  std::uint64_t encoder_init_seed() const;
  TrainConfig train() const;
  double holdout_fraction() const;
  double validation_fraction() const;
  std::uint64_t split_seed() const;
  ProbeConfig probe() const;
  std::uint64_t probe_seed() const;
  std::uint64_t evaluation_seed() const;
  UmapLiteConfig umap() const;
  std::string reduction() const;
  std::size_t cluster_k_min() const;
  std::size_t cluster_k_max() const;
  std::size_t frame_stride() const;
  SyntheticConfig synthetic() const;
  std::map<ScenarioTemplate, int> synthetic_counts() const;
  std::uint64_t synthetic_seed() const;

 private:
  explicit Config(nlohmann::json j) : json_(std::move(j)) {}
  const nlohmann::json& at(const std::string& dotted) const;

  nlohmann::json json_;
};

}  // namespace ssg
