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

#ifndef SSG_SSG_H_
#define SSG_SSG_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(SSG_BUILDING_LIBRARY)
#define SSG_API __declspec(dllexport)
#else
#define SSG_API __declspec(dllimport)
#endif
#else
#define SSG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes for the command-line tool. */
typedef enum ssg_status {
  SSG_OK = 0,
  SSG_ERR_USAGE = 1,   /* bad arguments or configuration */
  SSG_ERR_DATA = 2,    /* malformed, missing or mismatched input; the message names the record */
  SSG_ERR_NUMERIC = 3, /* non-finite loss or embedding */
  SSG_ERR_INTERNAL = 4
} ssg_status;

SSG_API const char* ssg_version(void);

/* Message of the last failed call on this thread; empty after success. */
SSG_API const char* ssg_last_error(void);

/* Strings returned through char** out-parameters are released with this. */
SSG_API void ssg_free_string(char* s);

/* ---- configuration ---------------------------------------------------------- */

typedef struct ssg_config ssg_config;

SSG_API ssg_status ssg_config_create(ssg_config** out);
/* Overlays a JSON file onto the defaults; unknown keys are rejected. */
SSG_API ssg_status ssg_config_load(const char* path, ssg_config** out);
/* "section.key=value"; the value is parsed as JSON, else taken as a string. */
SSG_API ssg_status ssg_config_set(ssg_config* config, const char* assignment);
SSG_API ssg_status ssg_config_hash(const ssg_config* config, char** out);
SSG_API ssg_status ssg_config_dump(const ssg_config* config, char** out);
SSG_API void ssg_config_destroy(ssg_config* config);

/* ---- pipeline commands -------------------------------------------------------- */

typedef void (*ssg_log_fn)(const char* message, void* user_data);

typedef struct ssg_run_options {
  int force; /* accept upstream artifacts from another configuration */
  ssg_log_fn log;
  void* user_data;
} ssg_run_options;

/* `location` may be NULL (defaults to the map id). */
SSG_API ssg_status ssg_run_ingest(const ssg_config* config, const ssg_run_options* options, const char* tracks_csv,
                                  const char* map_json, const char* location, const char* out_scenes);
SSG_API ssg_status ssg_run_generate(const ssg_config* config, const ssg_run_options* options, const char* out_dir);
/* `maps` lists map files or directories of map files. */
SSG_API ssg_status ssg_run_build_graphs(const ssg_config* config, const ssg_run_options* options,
                                        const char* scenes, const char* const* maps, size_t map_count,
                                        const char* out_graphs);
SSG_API ssg_status ssg_run_train(const ssg_config* config, const ssg_run_options* options, const char* graphs,
                                 const char* scenes, const char* const* maps, size_t map_count, const char* out_dir);
SSG_API ssg_status ssg_run_embed(const ssg_config* config, const ssg_run_options* options, const char* checkpoint,
                                 const char* graphs, const char* out_csv);
SSG_API ssg_status ssg_run_eval(const ssg_config* config, const ssg_run_options* options, const char* checkpoint,
                                const char* holdout_graphs, const char* scenes, const char* const* maps,
                                size_t map_count, const char* out_report);
SSG_API ssg_status ssg_run_cluster(const ssg_config* config, const ssg_run_options* options, const char* embeddings,
                                   const char* out_dir);
/* `graphs` may be NULL when colouring by cluster. */
SSG_API ssg_status ssg_run_plot(const ssg_config* config, const ssg_run_options* options, const char* input,
                                const char* color_by, const char* graphs, const char* out_svg);

/* ---- lane maps and scene graphs ----------------------------------------------- */

typedef struct ssg_map ssg_map;

SSG_API ssg_status ssg_map_load(const char* path, ssg_map** out);
SSG_API size_t ssg_map_lane_count(const ssg_map* map);
SSG_API void ssg_map_destroy(ssg_map* map);

/* Builds the scene graph of one scene JSON object; the result is graph JSON. */
SSG_API ssg_status ssg_graph_from_scene_json(const ssg_config* config, const ssg_map* map, const char* scene_json,
                                             char** out_graph_json);

/* ---- encoder -------------------------------------------------------------------- */

typedef struct ssg_encoder ssg_encoder;

SSG_API ssg_status ssg_encoder_load(const char* checkpoint, ssg_encoder** out);
/* Freshly initialised parameters from the configuration's encoder section. */
SSG_API ssg_status ssg_encoder_create(const ssg_config* config, ssg_encoder** out);
SSG_API size_t ssg_encoder_embedding_dim(const ssg_encoder* encoder);
SSG_API ssg_status ssg_encoder_embed_graph_json(const ssg_encoder* encoder, const char* graph_json, double* out,
                                                size_t out_len);
SSG_API void ssg_encoder_destroy(ssg_encoder* encoder);

/* ---- metric helpers ----------------------------------------------------------------- */

SSG_API ssg_status ssg_euclidean_distance(const double* a, const double* b, size_t dim, double* out);
SSG_API ssg_status ssg_triplet_loss(const double* anchor, const double* positive, const double* negative, size_t dim,
                                    double margin, double* out);

#ifdef __cplusplus
}
#endif

#endif /* SSG_SSG_H_ */
