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

#include "cckg/cckg.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <unordered_set>
#include <vector>

#include "core/cckg_graph.hpp"
#include "core/embed_store.hpp"
#include "core/error.hpp"
#include "core/extractor.hpp"
#include "core/features.hpp"
#include "core/io.hpp"
#include "core/kg_store.hpp"
#include "core/metrics.hpp"
#include "core/pruner.hpp"
#include "core/verbalizer.hpp"

struct cckg_kg {
  cckg::KnowledgeGraph kg;
};
struct cckg_templates {
  cckg::TemplateSet set;
};
struct cckg_embeddings {
  cckg::EmbeddingMatrix matrix;
};
struct cckg_encoder {
  std::unique_ptr<cckg::TextEncoder> encoder;
};
struct cckg_graph {
  cckg::Cckg graph;
};

namespace {

thread_local std::string g_last_error;

cckg_status ToStatus(cckg::ErrorCode code) {
  switch (code) {
    case cckg::ErrorCode::kInvalidArgument:
      return CCKG_ERR_INVALID_ARGUMENT;
    case cckg::ErrorCode::kIo:
      return CCKG_ERR_IO;
    case cckg::ErrorCode::kFormat:
      return CCKG_ERR_FORMAT;
    case cckg::ErrorCode::kAlignment:
      return CCKG_ERR_ALIGNMENT;
    case cckg::ErrorCode::kNotFound:
      return CCKG_ERR_NOT_FOUND;
    case cckg::ErrorCode::kInternal:
      return CCKG_ERR_INTERNAL;
  }
  return CCKG_ERR_INTERNAL;
}

template <typename F>
cckg_status Guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return CCKG_OK;
  } catch (const cckg::Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CCKG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CCKG_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CCKG_ERR_INTERNAL;
  }
}

void Require(const void* p, const char* what) {
  if (p == nullptr) cckg::Fail(cckg::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::filesystem::path> Paths(const char* const* paths, size_t count) {
  if (count > 0) Require(paths, "paths");
  std::vector<std::filesystem::path> out;
  for (size_t i = 0; i < count; ++i) {
    Require(paths[i], "path");
    out.emplace_back(paths[i]);
  }
  return out;
}

cckg::ScoreContext MakeContext(const cckg_eval_options* options) {
  Require(options, "options");
  Require(options->encoder, "encoder");
  cckg::ScoreContext ctx;
  ctx.verbalize = cckg::MakeVerbalizer(options->templates ? &options->templates->set : nullptr);
  ctx.similarity = cckg::EmbeddingSimilarity(*options->encoder->encoder);
  ctx.ged.timeout_seconds = options->ged_timeout_seconds;
  return ctx;
}

void FillScore(const cckg::GraphScore& s, cckg_score* out) {
  out->c_p = s.concepts.precision;
  out->c_r = s.concepts.recall;
  out->c_f1 = s.concepts.f1;
  out->t_p = s.triplets.precision;
  out->t_r = s.triplets.recall;
  out->t_f1 = s.triplets.f1;
  out->ged = s.ged;
  out->gbs = s.gbs;
  out->ged_exact = s.ged_exact ? 1 : 0;
}

void CheckAlignment(const cckg::KnowledgeGraph& kg, const cckg::EmbeddingMatrix& emb,
                    const cckg::TextEncoder* encoder) {
  if (emb.rows() != kg.triplet_count()) {
    cckg::Fail(cckg::ErrorCode::kAlignment,
               "embedding rows (" + std::to_string(emb.rows()) + ") do not match KG triplets (" +
                   std::to_string(kg.triplet_count()) +
                   "); re-run verbalize and embed against this KG");
  }
  if (encoder != nullptr && encoder->dim() != emb.dim()) {
    cckg::Fail(cckg::ErrorCode::kAlignment,
               "encoder dimension " + std::to_string(encoder->dim()) +
                   " does not match embedding dimension " + std::to_string(emb.dim()));
  }
}

}  // namespace

extern "C" {

const char* cckg_last_error(void) { return g_last_error.c_str(); }

const char* cckg_status_name(cckg_status status) {
  switch (status) {
    case CCKG_OK:
      return "ok";
    case CCKG_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case CCKG_ERR_IO:
      return "i/o error";
    case CCKG_ERR_FORMAT:
      return "format error";
    case CCKG_ERR_ALIGNMENT:
      return "alignment error";
    case CCKG_ERR_NOT_FOUND:
      return "not found";
    case CCKG_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* cckg_version(void) { return "1.0.0"; }

void cckg_string_free(char* s) { std::free(s); }

cckg_status cckg_kg_load(const char* path, const char* const* exclude_relations,
                         size_t exclude_count, cckg_kg** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    if (exclude_count > 0) Require(exclude_relations, "exclude_relations");
    std::unordered_set<std::string> exclude;
    for (size_t i = 0; i < exclude_count; ++i) {
      Require(exclude_relations[i], "relation");
      exclude.insert(exclude_relations[i]);
    }
    auto handle = std::make_unique<cckg_kg>();
    handle->kg = cckg::LoadAnyKg(path, exclude);
    *out = handle.release();
  });
}

cckg_status cckg_kg_merge_gold(const char* const* paths, size_t count, cckg_kg** out) {
  return Guard([&] {
    Require(out, "out");
    auto handle = std::make_unique<cckg_kg>();
    handle->kg = cckg::MergeGoldGraphs(Paths(paths, count));
    *out = handle.release();
  });
}

cckg_status cckg_kg_save_snapshot(const cckg_kg* kg, const char* path) {
  return Guard([&] {
    Require(kg, "kg");
    Require(path, "path");
    cckg::SaveSnapshot(kg->kg, path);
  });
}

size_t cckg_kg_concept_count(const cckg_kg* kg) { return kg ? kg->kg.concept_count() : 0; }
size_t cckg_kg_relation_count(const cckg_kg* kg) { return kg ? kg->kg.relation_count() : 0; }
size_t cckg_kg_triplet_count(const cckg_kg* kg) { return kg ? kg->kg.triplet_count() : 0; }

cckg_status cckg_kg_find_concept(const cckg_kg* kg, const char* label, uint32_t* id) {
  return Guard([&] {
    Require(kg, "kg");
    Require(label, "label");
    Require(id, "id");
    const auto found = kg->kg.find_concept(label);
    if (!found) cckg::Fail(cckg::ErrorCode::kNotFound, std::string("unknown concept: ") + label);
    *id = *found;
  });
}

cckg_status cckg_kg_concept_label(const cckg_kg* kg, uint32_t id, char** label) {
  return Guard([&] {
    Require(kg, "kg");
    Require(label, "label");
    *label = Dup(kg->kg.concept_label(id));
  });
}

cckg_status cckg_kg_degree(const cckg_kg* kg, uint32_t id, size_t* degree) {
  return Guard([&] {
    Require(kg, "kg");
    Require(degree, "degree");
    *degree = kg->kg.degree(id);
  });
}

void cckg_kg_free(cckg_kg* kg) { delete kg; }

cckg_status cckg_templates_load(const char* const* paths, size_t count, cckg_templates** out) {
  return Guard([&] {
    Require(out, "out");
    if (count == 0) cckg::Fail(cckg::ErrorCode::kInvalidArgument, "no template files given");
    auto handle = std::make_unique<cckg_templates>();
    for (const auto& p : Paths(paths, count)) handle->set.Merge(cckg::TemplateSet::Load(p));
    *out = handle.release();
  });
}

size_t cckg_templates_size(const cckg_templates* templates) {
  return templates ? templates->set.size() : 0;
}

void cckg_templates_free(cckg_templates* templates) { delete templates; }

cckg_status cckg_verbalize(const cckg_kg* kg, const cckg_templates* templates, uint32_t triplet_id,
                           char** sentence) {
  return Guard([&] {
    Require(kg, "kg");
    Require(templates, "templates");
    Require(sentence, "sentence");
    *sentence = Dup(cckg::Verbalize(kg->kg, triplet_id, templates->set));
  });
}

cckg_status cckg_verbalize_all(const cckg_kg* kg, const cckg_templates* templates,
                               const char* out_path, size_t* lines) {
  return Guard([&] {
    Require(kg, "kg");
    Require(templates, "templates");
    Require(out_path, "out_path");
    const size_t n = cckg::VerbalizeAll(kg->kg, templates->set, out_path);
    if (lines) *lines = n;
  });
}

cckg_status cckg_write_concept_texts(const cckg_kg* kg, const char* out_path, size_t* lines) {
  return Guard([&] {
    Require(kg, "kg");
    Require(out_path, "out_path");
    const size_t n = cckg::WriteConceptTexts(kg->kg, out_path);
    if (lines) *lines = n;
  });
}

cckg_status cckg_encoder_mock(size_t dim, cckg_encoder** out) {
  return Guard([&] {
    Require(out, "out");
    auto handle = std::make_unique<cckg_encoder>();
    handle->encoder = std::make_unique<cckg::MockEncoder>(dim);
    *out = handle.release();
  });
}

cckg_status cckg_encoder_from_files(const char* texts_path, const char* embeddings_path,
                                    cckg_encoder** out) {
  return Guard([&] {
    Require(texts_path, "texts_path");
    Require(embeddings_path, "embeddings_path");
    Require(out, "out");
    auto handle = std::make_unique<cckg_encoder>();
    handle->encoder = std::make_unique<cckg::LookupEncoder>(texts_path, embeddings_path);
    *out = handle.release();
  });
}

size_t cckg_encoder_dim(const cckg_encoder* encoder) {
  return encoder ? encoder->encoder->dim() : 0;
}

cckg_status cckg_encoder_encode(const cckg_encoder* encoder, const char* text, float* out,
                                size_t dim) {
  return Guard([&] {
    Require(encoder, "encoder");
    Require(text, "text");
    Require(out, "out");
    if (dim != encoder->encoder->dim()) {
      cckg::Fail(cckg::ErrorCode::kInvalidArgument, "output buffer dimension mismatch");
    }
    const auto v = encoder->encoder->Encode(text);
    std::memcpy(out, v.data(), v.size() * sizeof(float));
  });
}

void cckg_encoder_free(cckg_encoder* encoder) { delete encoder; }

cckg_status cckg_embeddings_load(const char* path, cckg_embeddings** out,
                                 size_t* renormalized_rows) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    auto handle = std::make_unique<cckg_embeddings>();
    handle->matrix = cckg::LoadEmbeddings(path, renormalized_rows);
    *out = handle.release();
  });
}

cckg_status cckg_embeddings_encode_lines(const cckg_encoder* encoder, const char* texts_path,
                                         const char* out_path, const char* source_name,
                                         size_t* rows) {
  return Guard([&] {
    Require(encoder, "encoder");
    Require(texts_path, "texts_path");
    Require(out_path, "out_path");
    std::ifstream in(texts_path);
    if (!in) cckg::Fail(cckg::ErrorCode::kIo, std::string("cannot open ") + texts_path);
    std::vector<std::string> texts;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      texts.push_back(std::move(line));
    }
    const auto matrix = cckg::EncodeAll(*encoder->encoder, texts);
    cckg::SaveEmbeddings(matrix, out_path);
    cckg::WriteSidecar(out_path, {source_name ? source_name : texts_path, matrix.rows()});
    if (rows) *rows = matrix.rows();
  });
}

size_t cckg_embeddings_rows(const cckg_embeddings* emb) { return emb ? emb->matrix.rows() : 0; }
size_t cckg_embeddings_dim(const cckg_embeddings* emb) { return emb ? emb->matrix.dim() : 0; }

cckg_status cckg_embeddings_check_alignment(const cckg_kg* kg, const cckg_embeddings* emb,
                                            const cckg_encoder* encoder) {
  return Guard([&] {
    Require(kg, "kg");
    Require(emb, "embeddings");
    CheckAlignment(kg->kg, emb->matrix, encoder ? encoder->encoder.get() : nullptr);
  });
}

void cckg_embeddings_free(cckg_embeddings* emb) { delete emb; }

void cckg_extract_options_init(cckg_extract_options* options) {
  if (options == nullptr) return;
  options->m = 1;
  options->k = 1;
  options->pairs = "all";
  options->mode = "weighted";
  options->seed = 0;
}

cckg_status cckg_extract(const cckg_kg* kg, const cckg_embeddings* triplet_embeddings,
                         const cckg_encoder* encoder, const char* query_json,
                         const cckg_extract_options* options, cckg_graph** out) {
  return Guard([&] {
    Require(kg, "kg");
    Require(triplet_embeddings, "triplet_embeddings");
    Require(encoder, "encoder");
    Require(query_json, "query_json");
    Require(out, "out");
    cckg::ExtractOptions opts;
    if (options != nullptr) {
      opts.m = options->m;
      opts.k = options->k;
      if (options->pairs) opts.pairs = cckg::ParsePairMode(options->pairs);
      if (options->mode) opts.mode = cckg::ParseSearchMode(options->mode);
      opts.seed = options->seed;
    }
    CheckAlignment(kg->kg, triplet_embeddings->matrix, encoder->encoder.get());
    const auto query = cckg::ParseQuery(query_json);
    auto handle = std::make_unique<cckg_graph>();
    handle->graph =
        cckg::Extract(kg->kg, triplet_embeddings->matrix, *encoder->encoder, query, opts);
    *out = handle.release();
  });
}

cckg_status cckg_graph_from_json(const char* json, cckg_graph** out) {
  return Guard([&] {
    Require(json, "json");
    Require(out, "out");
    auto handle = std::make_unique<cckg_graph>();
    handle->graph = cckg::CckgFromJson(json);
    *out = handle.release();
  });
}

cckg_status cckg_graph_to_json(const cckg_graph* graph, char** json) {
  return Guard([&] {
    Require(graph, "graph");
    Require(json, "json");
    *json = Dup(cckg::CckgToJson(graph->graph));
  });
}

cckg_status cckg_graph_to_dot(const cckg_graph* graph, char** dot) {
  return Guard([&] {
    Require(graph, "graph");
    Require(dot, "dot");
    *dot = Dup(cckg::CckgToDot(graph->graph));
  });
}

cckg_status cckg_graph_id(const cckg_graph* graph, char** id) {
  return Guard([&] {
    Require(graph, "graph");
    Require(id, "id");
    *id = Dup(graph->graph.id);
  });
}

size_t cckg_graph_node_count(const cckg_graph* graph) { return graph ? graph->graph.nodes.size() : 0; }
size_t cckg_graph_edge_count(const cckg_graph* graph) { return graph ? graph->graph.edges.size() : 0; }
size_t cckg_graph_path_count(const cckg_graph* graph) { return graph ? graph->graph.paths.size() : 0; }

void cckg_graph_free(cckg_graph* graph) { delete graph; }

void cckg_prune_options_init(cckg_prune_options* options) {
  if (options == nullptr) return;
  options->ranker = "similarity";
  options->fraction = 1.0;
  options->damping = cckg::kDefaultDamping;
}

cckg_status cckg_prune(const cckg_graph* graph, const cckg_encoder* encoder,
                       const cckg_prune_options* options, cckg_graph** out) {
  return Guard([&] {
    Require(graph, "graph");
    Require(options, "options");
    Require(out, "out");
    const auto ranker = cckg::ParseRanker(options->ranker ? options->ranker : "similarity");
    auto handle = std::make_unique<cckg_graph>();
    if (ranker == cckg::Ranker::kPagerank) {
      handle->graph = cckg::PruneByPageRank(graph->graph, options->fraction, options->damping);
    } else {
      Require(encoder, "encoder");
      const auto argument = encoder->encoder->Encode(graph->graph.ArgumentText());
      const auto ranking = cckg::RankBySimilarity(graph->graph, argument, *encoder->encoder);
      handle->graph = cckg::Prune(graph->graph, ranking, options->fraction);
    }
    *out = handle.release();
  });
}

size_t cckg_feature_count(void) { return cckg::kFeatureCount; }

const char* cckg_feature_name(size_t index) {
  return index < cckg::kFeatureCount ? cckg::kFeatureNames[index].data() : nullptr;
}

cckg_status cckg_features(const cckg_graph* graph, const cckg_encoder* encoder, const double* nli,
                          double* out, size_t out_len) {
  return Guard([&] {
    Require(graph, "graph");
    Require(encoder, "encoder");
    Require(out, "out");
    if (out_len != cckg::kFeatureCount) {
      cckg::Fail(cckg::ErrorCode::kInvalidArgument, "feature buffer must hold 19 values");
    }
    cckg::NliScores scores;
    if (nli != nullptr) scores = {nli[0], nli[1], nli[2]};
    const auto p = encoder->encoder->Encode(graph->graph.premise);
    const auto c = encoder->encoder->Encode(graph->graph.conclusion);
    const auto v = cckg::ComputeFeatures(graph->graph, p, c, scores);
    std::memcpy(out, v.data(), v.size() * sizeof(double));
  });
}

cckg_status cckg_features_export(const char* const* ids, const double* values,
                                 const char* const* labels, size_t count, const char* out_path) {
  return Guard([&] {
    Require(out_path, "out_path");
    if (count > 0) {
      Require(ids, "ids");
      Require(values, "values");
    }
    std::vector<cckg::FeatureRow> rows(count);
    for (size_t i = 0; i < count; ++i) {
      Require(ids[i], "id");
      rows[i].id = ids[i];
      std::memcpy(rows[i].values.data(), values + i * cckg::kFeatureCount,
                  cckg::kFeatureCount * sizeof(double));
      if (labels != nullptr && labels[i] != nullptr) rows[i].label = labels[i];
    }
    cckg::ExportMatrix(rows, out_path);
  });
}

void cckg_eval_options_init(cckg_eval_options* options) {
  if (options == nullptr) return;
  options->encoder = nullptr;
  options->templates = nullptr;
  options->ged_timeout_seconds = 1.0;
}

cckg_status cckg_score_pair(const char* pred_path, const char* gold_path,
                            const cckg_eval_options* options, cckg_score* out) {
  return Guard([&] {
    Require(pred_path, "pred_path");
    Require(gold_path, "gold_path");
    Require(out, "out");
    const auto ctx = MakeContext(options);
    const auto s =
        cckg::ScorePair(cckg::LoadGraphFile(pred_path), cckg::LoadGraphFile(gold_path), ctx);
    FillScore(s, out);
  });
}

cckg_status cckg_evaluate_corpus(const char* pred_dir, const char* gold_dir,
                                 const cckg_eval_options* options, const char* table_path,
                                 const char* csv_path, cckg_score* macro, char** table) {
  return Guard([&] {
    Require(pred_dir, "pred_dir");
    Require(gold_dir, "gold_dir");
    const auto ctx = MakeContext(options);
    const auto report = cckg::EvaluateCorpus(pred_dir, gold_dir, ctx);
    const auto text = cckg::FormatReportTable(report);
    if (table_path) cckg::WriteFileAtomically(table_path, text);
    if (csv_path) cckg::WriteFileAtomically(csv_path, cckg::FormatReportCsv(report));
    if (macro) FillScore(report.macro, macro);
    if (table) *table = Dup(text);
  });
}

cckg_status cckg_write_file_atomic(const char* path, const char* data, size_t size) {
  return Guard([&] {
    Require(path, "path");
    if (size > 0) Require(data, "data");
    cckg::WriteFileAtomically(path, std::string_view(data ? data : "", size));
  });
}

cckg_status cckg_file_checksum(const char* path, uint64_t* checksum) {
  return Guard([&] {
    Require(path, "path");
    Require(checksum, "checksum");
    *checksum = cckg::Fnv1a64File(path);
  });
}

}  // extern "C"
