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

#include <doctest.h>

#include <algorithm>
#include <string>

#include "common/errors.hpp"
#include "common/tempdir.hpp"
#include "core/io.hpp"
#include "core/pipeline.hpp"

using namespace ssg;
using namespace ssg::testing;
namespace fs = std::filesystem;

namespace {

pipeline::Context small_context() {
  pipeline::Context ctx;
  auto& c = ctx.config;
  c.set("synthetic.counts", R"({"StraightFollowing": 12, "MergeLane": 12, "FourWayIntersection": 12, "QueueJam": 12})");
  c.set("training.epochs", "2");
  c.set("training.batch_size", "16");
  c.set("probe.epochs", "20");
  c.set("cluster.k_max", "6");
  c.set("cluster.umap.epochs", "30");
  return ctx;
}

std::vector<fs::path> map_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("end-to-end run on a small synthetic corpus") {
  TempDir dir("pipe");
  auto ctx = small_context();
  std::vector<std::string> messages;
  ctx.log = [&](const std::string& m) { messages.push_back(m); };

  pipeline::generate(ctx, dir.path());
  REQUIRE(fs::exists(dir / "scenes.json"));
  const auto maps = map_files(dir / "maps");
  CHECK(maps.size() >= 3);
  CHECK(!fs::is_empty(dir / "tracks"));
  CHECK(io::load_scenes(dir / "scenes.json").scenes.size() == 48);

  const auto summary = pipeline::build_graphs(ctx, dir / "scenes.json", maps, dir / "graphs.json");
  CHECK(summary.built == 48);
  CHECK(summary.failed == 0);
  CHECK(fs::exists(summary.error_log));
  const auto first = io::read_text(dir / "graphs.json");
  pipeline::build_graphs(ctx, dir / "scenes.json", maps, dir / "graphs.json");
  CHECK(io::read_text(dir / "graphs.json") == first);

  const auto run = dir / "run";
  pipeline::train(ctx, dir / "graphs.json", dir / "scenes.json", maps, run);
  for (const char* f : {"loss_history.csv", "split.json", "holdout_graphs.json", "checkpoint_best.json",
                        "checkpoint_final.json"})
    CHECK_MESSAGE(fs::exists(run / f), f);
  CHECK(!fs::is_empty(run / "checkpoints"));

  pipeline::embed(ctx, run / "checkpoint_final.json", dir / "graphs.json", dir / "emb.csv");
  const auto table = io::load_embeddings(dir / "emb.csv");
  CHECK(table.embeddings.size() == 48);
  CHECK(table.config_hash == ctx.config.hash());

  pipeline::evaluate(ctx, run / "checkpoint_best.json", run / "holdout_graphs.json", dir / "scenes.json", maps,
                     dir / "eval.json");
  const auto report = io::read_json(dir / "eval.json");
  CHECK(report.at("accuracy").at("total").at("accuracy").get<double>() >= 0.0);
  CHECK(report.at("probes").size() == 6);

  {
    auto other = ctx;
    other.config.set("seed", "43");
    CHECK(error_kind([&] { pipeline::cluster(other, dir / "emb.csv", dir / "x"); }) == ErrorKind::ConfigMismatch);
    other.force = true;
    CHECK_NOTHROW(pipeline::cluster(other, dir / "emb.csv", dir / "x"));
  }

  for (const char* red : {"pca", "umap"}) {
    auto c = ctx;
    c.config.set("cluster.reduction", red);
    c.force = true;
    pipeline::cluster(c, dir / "emb.csv", dir / red);
    CHECK(fs::exists(dir / red / "cluster_report.json"));
    CHECK(fs::exists(dir / red / "assignments.csv"));
    const auto rep = io::read_json(dir / red / "cluster_report.json");
    CHECK(rep.at("reduction") == red);
    const auto k = rep.at("selected_k").get<std::size_t>();
    CHECK(k >= 2);
    CHECK(k <= 6);
    CHECK(rep.at("assignments").size() == 48);
  }

  ctx.force = true;
  pipeline::plot(ctx, dir / "pca" / "cluster_report.json", "cluster", std::nullopt, dir / "c.svg");
  pipeline::plot(ctx, dir / "emb.csv", "mean_speed", dir / "graphs.json", dir / "s.svg");
  CHECK(io::read_text(dir / "c.svg").find("<svg") != std::string::npos);
  CHECK(io::read_text(dir / "s.svg").find("<svg") != std::string::npos);
  CHECK(error_kind([&] { pipeline::plot(ctx, dir / "emb.csv", "colour", dir / "graphs.json", dir / "x.svg"); }) ==
        ErrorKind::Usage);
  CHECK(error_kind([&] { pipeline::plot(ctx, dir / "emb.csv", "cluster", std::nullopt, dir / "x.svg"); }) ==
        ErrorKind::Usage);
  CHECK(std::any_of(messages.begin(), messages.end(),
                    [](const std::string& m) { return m.find("config") != std::string::npos; }));
}

TEST_CASE("stale artifacts are refused unless forced") {
  pipeline::Context ctx;
  const auto h = ctx.config.hash();
  CHECK_NOTHROW(pipeline::check_hash(ctx, h, "a"));
  CHECK(error_kind([&] { pipeline::check_hash(ctx, "0000000000000000", "a"); }) == ErrorKind::ConfigMismatch);
  ctx.force = true;
  CHECK_NOTHROW(pipeline::check_hash(ctx, "0000000000000000", "a"));
}

TEST_CASE("ingest reproduces the generated scenes") {
  TempDir dir("ingest");
  auto ctx = small_context();
  ctx.config.set("synthetic.counts", R"({"QueueJam": 10})");
  pipeline::generate(ctx, dir.path());
  const auto maps = map_files(dir / "maps");
  REQUIRE(maps.size() == 1);
  const auto id = maps[0].stem().string();
  pipeline::ingest(ctx, dir / "tracks" / (id + ".csv"), maps[0], dir / "again.json");
  CHECK(io::read_text(dir / "again.json") == io::read_text(dir / "scenes.json"));
}

TEST_CASE("build_graphs rejects malformed input and fails when nothing builds") {
  TempDir dir("empty");
  pipeline::Context ctx;
  io::write_text(dir / "scenes.json", "[]");
  io::write_text(dir / "map.json", R"({"id": "m", "lanes": []})");
  CHECK(error_kind([&] { pipeline::build_graphs(ctx, dir / "scenes.json", {dir / "map.json"}, dir / "g.json"); }) ==
        ErrorKind::Parse);

  pipeline::Context gen;
  gen.config.set("synthetic.counts", R"({"QueueJam": 10})");
  pipeline::generate(gen, dir.path());
  ctx.force = true;
  CHECK(error_kind([&] { pipeline::build_graphs(ctx, dir / "scenes.json", {dir / "map.json"}, dir / "g.json"); }) ==
        ErrorKind::EmptyGraph);
  const auto log = io::read_text(dir / "g.errors.log");
  const auto first_id = io::load_scenes(dir / "scenes.json").scenes.at(0).scene_id;
  CHECK(log.find(first_id + ": ") != std::string::npos);
  CHECK(log.find("unknown map") != std::string::npos);
}
