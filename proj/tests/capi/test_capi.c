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

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include <ssg/ssg.h>

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: EXPECT(%s) failed: %s\n", __FILE__,     \
              __LINE__, #cond, ssg_last_error());                     \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static const char* kMap =
    "{\"id\":\"road\",\"lanes\":[{\"id\":\"a\",\"width\":3.5,\"centerline\":[[0,0],[100,0]]},"
    "{\"id\":\"b\",\"width\":3.5,\"centerline\":[[0,3.5],[100,3.5]]}],"
    "\"relations\":[{\"kind\":\"parallel\",\"a\":\"a\",\"b\":\"b\"}]}";

static const char* kScene =
    "{\"scene_id\":\"s1\",\"location_label\":\"road\",\"map_ref\":\"road\",\"participants\":["
    "{\"id\":\"1\",\"x\":10,\"y\":0,\"speed\":5,\"heading\":0,\"class\":\"car\"},"
    "{\"id\":\"2\",\"x\":25,\"y\":0.2,\"speed\":6,\"heading\":0,\"class\":\"car\"},"
    "{\"id\":\"3\",\"x\":18,\"y\":3.5,\"speed\":4,\"heading\":0,\"class\":\"truck\"}]}";

static int logged = 0;
static void count_log(const char* message, void* user_data) {
  (void)message;
  ++*(int*)user_data;
}

int main(int argc, char** argv) {
  const char* tmp = argc > 1 ? argv[1] : ".";
  char map_path[1024];
  snprintf(map_path, sizeof map_path, "%s/capi_map.json", tmp);
  FILE* f = fopen(map_path, "w");
  if (!f) return 2;
  fputs(kMap, f);
  fclose(f);

  EXPECT(strlen(ssg_version()) > 0);

  ssg_config* cfg = NULL;
  EXPECT(ssg_config_create(&cfg) == SSG_OK);
  char* hash = NULL;
  EXPECT(ssg_config_hash(cfg, &hash) == SSG_OK);
  EXPECT(hash && strlen(hash) == 16);
  EXPECT(ssg_config_set(cfg, "training.epochs=3") == SSG_OK);
  char* hash2 = NULL;
  EXPECT(ssg_config_hash(cfg, &hash2) == SSG_OK);
  EXPECT(strcmp(hash, hash2) != 0);
  ssg_free_string(hash);
  ssg_free_string(hash2);
  EXPECT(ssg_config_set(cfg, "training.no_such_key=1") == SSG_ERR_USAGE);
  EXPECT(strstr(ssg_last_error(), "no_such_key") != NULL);
  EXPECT(ssg_config_set(cfg, NULL) == SSG_ERR_USAGE);
  char* dump = NULL;
  EXPECT(ssg_config_dump(cfg, &dump) == SSG_OK);
  EXPECT(dump && strstr(dump, "\"epochs\": 3") != NULL);
  ssg_free_string(dump);
  EXPECT(strlen(ssg_last_error()) == 0);

  ssg_config* missing = NULL;
  EXPECT(ssg_config_load("/nonexistent/cfg.json", &missing) == SSG_ERR_DATA);
  EXPECT(missing == NULL);

  ssg_map* map = NULL;
  EXPECT(ssg_map_load(map_path, &map) == SSG_OK);
  EXPECT(ssg_map_lane_count(map) == 2);

  char* graph = NULL;
  EXPECT(ssg_graph_from_scene_json(cfg, map, kScene, &graph) == SSG_OK);
  EXPECT(graph != NULL);
  EXPECT(ssg_graph_from_scene_json(cfg, map, "{\"scene_id\":", &graph) == SSG_ERR_DATA);

  ssg_encoder* enc = NULL;
  EXPECT(ssg_encoder_create(cfg, &enc) == SSG_OK);
  EXPECT(ssg_encoder_embedding_dim(enc) == 12);
  double e1[12], e2[12];
  EXPECT(ssg_encoder_embed_graph_json(enc, graph, e1, 12) == SSG_OK);
  EXPECT(ssg_encoder_embed_graph_json(enc, graph, e2, 12) == SSG_OK);
  EXPECT(memcmp(e1, e2, sizeof e1) == 0);
  for (int i = 0; i < 12; ++i) EXPECT(isfinite(e1[i]));
  EXPECT(ssg_encoder_embed_graph_json(enc, graph, e1, 4) == SSG_ERR_USAGE);
  EXPECT(ssg_encoder_load("/nonexistent/ck.json", &enc) == SSG_ERR_DATA);
  ssg_free_string(graph);
  ssg_encoder_destroy(enc);
  ssg_map_destroy(map);

  const double a[2] = {0.0, 0.0}, p[2] = {3.0, 4.0}, n[2] = {6.0, 8.0};
  double d = 0.0, loss = -1.0;
  EXPECT(ssg_euclidean_distance(a, p, 2, &d) == SSG_OK);
  EXPECT(fabs(d - 5.0) < 1e-12);
  EXPECT(ssg_triplet_loss(a, p, n, 2, 0.5, &loss) == SSG_OK);
  EXPECT(loss == 0.0);
  EXPECT(ssg_triplet_loss(a, n, p, 2, 0.5, &loss) == SSG_OK);
  EXPECT(fabs(loss - 5.5) < 1e-12);
  EXPECT(ssg_triplet_loss(a, p, n, 2, 0.5, NULL) == SSG_ERR_USAGE);

  ssg_run_options opts = {0, count_log, &logged};
  const char* no_maps[1] = {map_path};
  EXPECT(ssg_run_build_graphs(cfg, &opts, "/nonexistent/scenes.json", no_maps, 1, "/tmp/never.json") ==
         SSG_ERR_DATA);
  EXPECT(strstr(ssg_last_error(), "scenes.json") != NULL);

  ssg_config_destroy(cfg);
  ssg_config_destroy(NULL);
  ssg_free_string(NULL);

  if (failures) {
    fprintf(stderr, "%d C API expectation(s) failed\n", failures);
    return 1;
  }
  printf("C API: all expectations met\n");
  return 0;
}
