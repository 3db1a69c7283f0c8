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

#include "core/config.hpp"

#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/random.hpp"

namespace ssg {

using nlohmann::json;

namespace {

json ranges_json(const TemplateRanges& r) {
  return json{{"count", {r.min_count, r.max_count}},
              {"speed", {r.min_speed, r.max_speed}},
              {"gap", {r.min_gap, r.max_gap}}};
}

TemplateRanges ranges_from(const json& j) {
  TemplateRanges r;
  r.min_count = j.at("count").at(0).get<int>();
  r.max_count = j.at("count").at(1).get<int>();
  r.min_speed = j.at("speed").at(0).get<double>();
  r.max_speed = j.at("speed").at(1).get<double>();
  r.min_gap = j.at("gap").at(0).get<double>();
  r.max_gap = j.at("gap").at(1).get<double>();
  return r;
}

// Recursively checks that `overlay` only uses keys known in `base`.
void check_known_keys(const json& base, const json& overlay, const std::string& path) {
  if (!overlay.is_object() || !base.is_object()) return;
  for (auto it = overlay.begin(); it != overlay.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    auto b = base.find(it.key());
    require(b != base.end(), ErrorKind::Usage, "unknown config key '" + key + "'");
    // Template count tables are open-ended maps of known template names.
    check_known_keys(*b, it.value(), key);
  }
}

}  // namespace

Config Config::defaults() {
  const SyntheticConfig syn;
  json counts = json::object();
  for (auto t : kAllTemplates) counts[to_string(t)] = 120;
  json templates = json::object();
  for (auto t : kAllTemplates) templates[to_string(t)] = ranges_json(ranges_for(syn, t));

  json j = {
      {"seed", 42},
      {"projection", {{"gate_width_factor", 1.5}, {"gate_m", nullptr}}},
      {"graph", {{"horizon_m", 50.0}}},
      {"augmentation", {{"p_select", 0.5}, {"sigma_pos", 1.0}, {"sigma_speed", 0.5}, {"seed", 1}}},
      {"encoder",
       {{"hidden", 60},
        {"embedding", 12},
        {"head_hidden", {60, 60}},
        {"leaky_slope", 0.01},
        {"gnn_dropout", 0.1},
        {"init_seed", 3}}},
      {"training",
       {{"learning_rate", 0.001},
        {"margin", 0.5},
        {"batch_size", 400},
        {"epochs", 400},
        {"seed", 42},
        {"workers", 1},
        {"holdout_fraction", 0.2},
        {"validation_fraction", 0.2},
        {"split_seed", 11},
        {"validation_seed", 7}}},
      {"adam", {{"beta1", 0.9}, {"beta2", 0.999}, {"epsilon", 1e-8}}},
      {"probe",
       {{"hidden", 30},
        {"depth", 4},
        {"dropout", 0.1},
        {"epochs", 2500},
        {"learning_rate", 0.001},
        {"train_fraction", 0.8},
        {"seed", 5}}},
      {"evaluation", {{"seed", 13}}},
      {"cluster",
       {{"reduction", "umap"},
        {"k_min", 2},
        {"k_max", 25},
        {"umap",
         {{"n_neighbors", 5}, {"min_dist", 0.0}, {"out_dim", 2}, {"epochs", 200}, {"negative_samples", 5}, {"seed", 17}}}}},
      {"ingest", {{"frame_stride", 10}}},
      {"synthetic",
       {{"seed", 2024},
        {"counts", counts},
        {"lane_width", syn.lane_width},
        {"vehicle_length", syn.vehicle_length},
        {"lateral_jitter", syn.lateral_jitter},
        {"truck_fraction", syn.truck_fraction},
        {"pedestrian_probability", syn.pedestrian_probability},
        {"templates", templates}}},
  };
  return Config(std::move(j));
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open config " + path.string());
  json overlay;
  try {
    overlay = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, "config " + path.string() + ": " + e.what());
  }
  Config c = defaults();
  check_known_keys(c.json_, overlay, "");
  c.json_.merge_patch(overlay);
  // merge_patch drops keys set to null; restore optional keys.
  if (!c.json_["projection"].contains("gate_m")) c.json_["projection"]["gate_m"] = nullptr;
  return c;
}

void Config::set(const std::string& dotted_key, const std::string& value) {
  json* node = &json_;
  std::stringstream ss(dotted_key);
  std::string part;
  while (std::getline(ss, part, '.')) {
    require(node->is_object() && node->contains(part), ErrorKind::Usage, "unknown config key '" + dotted_key + "'");
    node = &(*node)[part];
  }
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::exception&) {
    parsed = value;
  }
  *node = std::move(parsed);
}

void Config::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  require(eq != std::string::npos && eq > 0, ErrorKind::Usage, "expected key=value, got '" + assignment + "'");
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::validate() const {
  seed();
  train();
  holdout_fraction();
  validation_fraction();
  split_seed();
  probe();
  probe_seed();
  evaluation_seed();
  umap();
  reduction();
  cluster_k_min();
  cluster_k_max();
  frame_stride();
  synthetic();
  synthetic_counts();
  synthetic_seed();
  encoder_init_seed();
}

std::string Config::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(json_.dump())));
  return buf;
}

const json& Config::at(const std::string& dotted) const {
  const json* node = &json_;
  std::stringstream ss(dotted);
  std::string part;
  while (std::getline(ss, part, '.')) {
    require(node->is_object() && node->contains(part), ErrorKind::Usage, "missing config key '" + dotted + "'");
    node = &(*node)[part];
  }
  return *node;
}

namespace {

template <class T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::Usage, "config key '" + key + "' has the wrong type: " + e.what());
  }
}

}  // namespace

#define SSG_CFG(type, key) get_as<type>(at(key), key)

std::uint64_t Config::seed() const { return SSG_CFG(std::uint64_t, "seed"); }

GraphOptions Config::graph_options() const {
  GraphOptions g;
  g.horizon_m = SSG_CFG(double, "graph.horizon_m");
  g.projection.gate_width_factor = SSG_CFG(double, "projection.gate_width_factor");
  const json& gate = at("projection.gate_m");
  if (!gate.is_null()) g.projection.gate_m = get_as<double>(gate, "projection.gate_m");
  return g;
}

AugmentParams Config::augment() const {
  AugmentParams a;
  a.p_select = SSG_CFG(double, "augmentation.p_select");
  a.sigma_pos = SSG_CFG(double, "augmentation.sigma_pos");
  a.sigma_speed = SSG_CFG(double, "augmentation.sigma_speed");
  a.seed = SSG_CFG(std::uint64_t, "augmentation.seed");
  ssg::validate(a);
  return a;
}

EncoderConfig Config::encoder() const {
  EncoderConfig e;
  e.hidden = SSG_CFG(int, "encoder.hidden");
  e.embedding = SSG_CFG(int, "encoder.embedding");
  e.head_hidden = SSG_CFG(std::vector<int>, "encoder.head_hidden");
  e.leaky_slope = SSG_CFG(double, "encoder.leaky_slope");
  e.gnn_dropout = SSG_CFG(double, "encoder.gnn_dropout");
  return e;
}

std::uint64_t Config::encoder_init_seed() const { return SSG_CFG(std::uint64_t, "encoder.init_seed"); }

TrainConfig Config::train() const {
  TrainConfig t;
  t.learning_rate = SSG_CFG(double, "training.learning_rate");
  t.margin = SSG_CFG(double, "training.margin");
  t.batch_size = SSG_CFG(std::size_t, "training.batch_size");
  t.epochs = SSG_CFG(std::size_t, "training.epochs");
  t.seed = SSG_CFG(std::uint64_t, "training.seed");
  t.workers = SSG_CFG(std::size_t, "training.workers");
  t.validation_seed = SSG_CFG(std::uint64_t, "training.validation_seed");
  t.adam.beta1 = SSG_CFG(double, "adam.beta1");
  t.adam.beta2 = SSG_CFG(double, "adam.beta2");
  t.adam.epsilon = SSG_CFG(double, "adam.epsilon");
  t.adam.learning_rate = t.learning_rate;
  t.encoder = encoder();
  t.augment = augment();
  t.graph = graph_options();
  ssg::validate(t);
  return t;
}

double Config::holdout_fraction() const { return SSG_CFG(double, "training.holdout_fraction"); }
double Config::validation_fraction() const { return SSG_CFG(double, "training.validation_fraction"); }
std::uint64_t Config::split_seed() const { return SSG_CFG(std::uint64_t, "training.split_seed"); }

ProbeConfig Config::probe() const {
  ProbeConfig p;
  p.hidden = SSG_CFG(int, "probe.hidden");
  p.depth = SSG_CFG(int, "probe.depth");
  p.dropout = SSG_CFG(double, "probe.dropout");
  p.epochs = SSG_CFG(std::size_t, "probe.epochs");
  p.learning_rate = SSG_CFG(double, "probe.learning_rate");
  p.train_fraction = SSG_CFG(double, "probe.train_fraction");
  return p;
}

std::uint64_t Config::probe_seed() const { return SSG_CFG(std::uint64_t, "probe.seed"); }
std::uint64_t Config::evaluation_seed() const { return SSG_CFG(std::uint64_t, "evaluation.seed"); }

UmapLiteConfig Config::umap() const {
  UmapLiteConfig u;
  u.n_neighbors = SSG_CFG(int, "cluster.umap.n_neighbors");
  u.min_dist = SSG_CFG(double, "cluster.umap.min_dist");
  u.out_dim = SSG_CFG(int, "cluster.umap.out_dim");
  u.epochs = SSG_CFG(int, "cluster.umap.epochs");
  u.negative_samples = SSG_CFG(int, "cluster.umap.negative_samples");
  u.seed = SSG_CFG(std::uint64_t, "cluster.umap.seed");
  return u;
}

std::string Config::reduction() const {
  auto r = SSG_CFG(std::string, "cluster.reduction");
  require(r == "pca" || r == "umap", ErrorKind::Usage, "cluster.reduction must be 'pca' or 'umap'");
  return r;
}

std::size_t Config::cluster_k_min() const { return SSG_CFG(std::size_t, "cluster.k_min"); }
std::size_t Config::cluster_k_max() const { return SSG_CFG(std::size_t, "cluster.k_max"); }

std::size_t Config::frame_stride() const {
  const auto s = SSG_CFG(std::size_t, "ingest.frame_stride");
  require(s >= 1, ErrorKind::Usage, "ingest.frame_stride must be >= 1");
  return s;
}

SyntheticConfig Config::synthetic() const {
  SyntheticConfig s;
  s.lane_width = SSG_CFG(double, "synthetic.lane_width");
  s.vehicle_length = SSG_CFG(double, "synthetic.vehicle_length");
  s.lateral_jitter = SSG_CFG(double, "synthetic.lateral_jitter");
  s.truck_fraction = SSG_CFG(double, "synthetic.truck_fraction");
  s.pedestrian_probability = SSG_CFG(double, "synthetic.pedestrian_probability");
  const json& t = at("synthetic.templates");
  try {
    s.straight = ranges_from(t.at("StraightFollowing"));
    s.merge = ranges_from(t.at("MergeLane"));
    s.intersection = ranges_from(t.at("FourWayIntersection"));
    s.queue = ranges_from(t.at("QueueJam"));
    s.mixed = ranges_from(t.at("Mixed"));
  } catch (const json::exception& e) {
    fail(ErrorKind::Usage, std::string("synthetic.templates: ") + e.what());
  }
  return s;
}

std::map<ScenarioTemplate, int> Config::synthetic_counts() const {
  std::map<ScenarioTemplate, int> out;
  for (auto it = at("synthetic.counts").begin(); it != at("synthetic.counts").end(); ++it)
    out[scenario_template_from_string(it.key())] = get_as<int>(it.value(), "synthetic.counts." + it.key());
  return out;
}

std::uint64_t Config::synthetic_seed() const { return SSG_CFG(std::uint64_t, "synthetic.seed"); }

#undef SSG_CFG

}  // namespace ssg
