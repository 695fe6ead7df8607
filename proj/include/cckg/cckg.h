/*
 * Copyright 2026 The cckg Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the cckg engine. All functions returning cckg_status set a
 * thread-local message retrievable with cckg_last_error() on failure.
 * Strings returned through char** are owned by the caller and released
 * with cckg_string_free(). Handles are released with their *_free
 * function; passing NULL to a *_free function is a no-op. */

#ifndef CCKG_CCKG_H_
#define CCKG_CCKG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CCKG_BUILDING_LIBRARY)
#define CCKG_API __attribute__((visibility("default")))
#else
#define CCKG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cckg_status {
  CCKG_OK = 0,
  CCKG_ERR_INVALID_ARGUMENT = 1,
  CCKG_ERR_IO = 2,
  CCKG_ERR_FORMAT = 3,
  CCKG_ERR_ALIGNMENT = 4,
  CCKG_ERR_NOT_FOUND = 5,
  CCKG_ERR_INTERNAL = 6
} cckg_status;

typedef struct cckg_kg cckg_kg;
typedef struct cckg_templates cckg_templates;
typedef struct cckg_embeddings cckg_embeddings;
typedef struct cckg_encoder cckg_encoder;
typedef struct cckg_graph cckg_graph;

CCKG_API const char* cckg_last_error(void);
CCKG_API const char* cckg_status_name(cckg_status status);
CCKG_API const char* cckg_version(void);
CCKG_API void cckg_string_free(char* s);

/* Knowledge graph. `path` may be a triplet TSV or a binary snapshot. */
CCKG_API cckg_status cckg_kg_load(const char* path, const char* const* exclude_relations,
                                  size_t exclude_count, cckg_kg** out);
CCKG_API cckg_status cckg_kg_merge_gold(const char* const* paths, size_t count, cckg_kg** out);
CCKG_API cckg_status cckg_kg_save_snapshot(const cckg_kg* kg, const char* path);
CCKG_API size_t cckg_kg_concept_count(const cckg_kg* kg);
CCKG_API size_t cckg_kg_relation_count(const cckg_kg* kg);
CCKG_API size_t cckg_kg_triplet_count(const cckg_kg* kg);
CCKG_API cckg_status cckg_kg_find_concept(const cckg_kg* kg, const char* label, uint32_t* id);
CCKG_API cckg_status cckg_kg_concept_label(const cckg_kg* kg, uint32_t id, char** label);
CCKG_API cckg_status cckg_kg_degree(const cckg_kg* kg, uint32_t id, size_t* degree);
CCKG_API void cckg_kg_free(cckg_kg* kg);

/* Relation templates; earlier files win on duplicate relations. */
CCKG_API cckg_status cckg_templates_load(const char* const* paths, size_t count,
                                         cckg_templates** out);
CCKG_API size_t cckg_templates_size(const cckg_templates* templates);
CCKG_API void cckg_templates_free(cckg_templates* templates);
CCKG_API cckg_status cckg_verbalize(const cckg_kg* kg, const cckg_templates* templates,
                                    uint32_t triplet_id, char** sentence);
CCKG_API cckg_status cckg_verbalize_all(const cckg_kg* kg, const cckg_templates* templates,
                                        const char* out_path, size_t* lines);
CCKG_API cckg_status cckg_write_concept_texts(const cckg_kg* kg, const char* out_path,
                                              size_t* lines);

/* Sentence encoders. */
CCKG_API cckg_status cckg_encoder_mock(size_t dim, cckg_encoder** out);
/* Line i of `texts_path` is embedded by row i of `embeddings_path`. */
CCKG_API cckg_status cckg_encoder_from_files(const char* texts_path, const char* embeddings_path,
                                             cckg_encoder** out);
CCKG_API size_t cckg_encoder_dim(const cckg_encoder* encoder);
CCKG_API cckg_status cckg_encoder_encode(const cckg_encoder* encoder, const char* text,
                                         float* out, size_t dim);
CCKG_API void cckg_encoder_free(cckg_encoder* encoder);

/* Embedding matrices (EMB1). */
CCKG_API cckg_status cckg_embeddings_load(const char* path, cckg_embeddings** out,
                                          size_t* renormalized_rows);
/* Embeds every line of `texts_path` and writes EMB1 plus its sidecar. */
CCKG_API cckg_status cckg_embeddings_encode_lines(const cckg_encoder* encoder,
                                                  const char* texts_path, const char* out_path,
                                                  const char* source_name, size_t* rows);
CCKG_API size_t cckg_embeddings_rows(const cckg_embeddings* emb);
CCKG_API size_t cckg_embeddings_dim(const cckg_embeddings* emb);
/* Row count must equal the triplet count; when `encoder` is given, the
 * dimensions must agree. Fails with CCKG_ERR_ALIGNMENT otherwise. */
CCKG_API cckg_status cckg_embeddings_check_alignment(const cckg_kg* kg, const cckg_embeddings* emb,
                                                     const cckg_encoder* encoder);
CCKG_API void cckg_embeddings_free(cckg_embeddings* emb);

/* Extraction. */
typedef struct cckg_extract_options {
  size_t m;
  size_t k;
  const char* pairs; /* "all" or "cross" */
  const char* mode;  /* "weighted", "unweighted-one", "unweighted-all" */
  uint64_t seed;
} cckg_extract_options;

CCKG_API void cckg_extract_options_init(cckg_extract_options* options);
/* `query_json` is one object {id, premise, conclusion, constituents?}. */
CCKG_API cckg_status cckg_extract(const cckg_kg* kg, const cckg_embeddings* triplet_embeddings,
                                  const cckg_encoder* encoder, const char* query_json,
                                  const cckg_extract_options* options, cckg_graph** out);

/* Extracted graphs. */
CCKG_API cckg_status cckg_graph_from_json(const char* json, cckg_graph** out);
CCKG_API cckg_status cckg_graph_to_json(const cckg_graph* graph, char** json);
CCKG_API cckg_status cckg_graph_to_dot(const cckg_graph* graph, char** dot);
CCKG_API cckg_status cckg_graph_id(const cckg_graph* graph, char** id);
CCKG_API size_t cckg_graph_node_count(const cckg_graph* graph);
CCKG_API size_t cckg_graph_edge_count(const cckg_graph* graph);
CCKG_API size_t cckg_graph_path_count(const cckg_graph* graph);
CCKG_API void cckg_graph_free(cckg_graph* graph);

/* Pruning. */
typedef struct cckg_prune_options {
  const char* ranker; /* "similarity" or "pagerank" */
  double fraction;    /* in [0, 1]; 1 is full pruning */
  double damping;     /* pagerank only */
} cckg_prune_options;

CCKG_API void cckg_prune_options_init(cckg_prune_options* options);
/* `encoder` is required for the similarity ranker. */
CCKG_API cckg_status cckg_prune(const cckg_graph* graph, const cckg_encoder* encoder,
                                const cckg_prune_options* options, cckg_graph** out);

/* Features. */
CCKG_API size_t cckg_feature_count(void);
CCKG_API const char* cckg_feature_name(size_t index);
/* Writes cckg_feature_count() values. `nli` holds (entail, neutral,
 * contradict) or is NULL for the uniform mock provider. */
CCKG_API cckg_status cckg_features(const cckg_graph* graph, const cckg_encoder* encoder,
                                   const double* nli, double* out, size_t out_len);
/* `values` is row-major, count x cckg_feature_count(); `labels` may be NULL. */
CCKG_API cckg_status cckg_features_export(const char* const* ids, const double* values,
                                          const char* const* labels, size_t count,
                                          const char* out_path);

/* Evaluation against gold graphs (TSV triplets or graph JSON). */
typedef struct cckg_score {
  double c_p, c_r, c_f1;
  double t_p, t_r, t_f1;
  double ged;
  double gbs;
  int ged_exact;
} cckg_score;

typedef struct cckg_eval_options {
  const cckg_encoder* encoder;     /* similarity for G-BS; required */
  const cckg_templates* templates; /* may be NULL */
  double ged_timeout_seconds;
} cckg_eval_options;

CCKG_API void cckg_eval_options_init(cckg_eval_options* options);
CCKG_API cckg_status cckg_score_pair(const char* pred_path, const char* gold_path,
                                     const cckg_eval_options* options, cckg_score* out);
/* Writes the text table and CSV when the paths are non-NULL. `table` may
 * be NULL. */
CCKG_API cckg_status cckg_evaluate_corpus(const char* pred_dir, const char* gold_dir,
                                          const cckg_eval_options* options,
                                          const char* table_path, const char* csv_path,
                                          cckg_score* macro, char** table);

/* File utilities shared with front ends. */
CCKG_API cckg_status cckg_write_file_atomic(const char* path, const char* data, size_t size);
CCKG_API cckg_status cckg_file_checksum(const char* path, uint64_t* checksum);

#ifdef __cplusplus
}
#endif

#endif /* CCKG_CCKG_H_ */
