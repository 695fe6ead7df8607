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

// Command-line front end. Talks to the engine only through the C API.

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cckg/cckg.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void Check(cckg_status status, const std::string& context) {
  if (status == CCKG_OK) return;
  std::string msg = context + ": " + cckg_status_name(status);
  const char* detail = cckg_last_error();
  if (detail != nullptr && *detail != '\0') msg += ": " + std::string(detail);
  throw CliError(msg);
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using KgPtr = std::unique_ptr<cckg_kg, Deleter<cckg_kg, cckg_kg_free>>;
using TemplatesPtr = std::unique_ptr<cckg_templates, Deleter<cckg_templates, cckg_templates_free>>;
using EmbeddingsPtr =
    std::unique_ptr<cckg_embeddings, Deleter<cckg_embeddings, cckg_embeddings_free>>;
using EncoderPtr = std::unique_ptr<cckg_encoder, Deleter<cckg_encoder, cckg_encoder_free>>;
using GraphPtr = std::unique_ptr<cckg_graph, Deleter<cckg_graph, cckg_graph_free>>;

std::string TakeString(char* s) {
  std::string out = s ? s : "";
  cckg_string_free(s);
  return out;
}

std::string ChecksumHex(const fs::path& path) {
  uint64_t sum = 0;
  Check(cckg_file_checksum(path.c_str(), &sum), "checksum " + path.string());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(sum));
  return buf;
}

void WriteAtomic(const fs::path& path, const std::string& data) {
  Check(cckg_write_file_atomic(path.c_str(), data.data(), data.size()), "write " + path.string());
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> ReadLines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// Sorted `*.json` files of a directory.
std::vector<fs::path> JsonFiles(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw CliError("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json" &&
        e.path().filename() != "manifest.json") {
      out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void RequireSafeId(const std::string& id) {
  if (id.empty() || id == "." || id == ".." || id == "manifest") {
    throw CliError("unusable argument id '" + id + "'");
  }
  for (char c : id) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    if (!ok) throw CliError("argument id '" + id + "' may only contain [A-Za-z0-9._-]");
  }
}

// Runs body(i) for i in [0, count) on `jobs` threads. Failures are
// collected per index and reported together in index order.
void ParallelFor(size_t count, size_t jobs, const std::function<void(size_t)>& body) {
  jobs = std::max<size_t>(1, std::min(jobs, count));
  std::atomic<size_t> next{0};
  std::vector<std::string> errors(count);
  auto worker = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> threads;
  for (size_t t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  std::string all;
  size_t failed = 0;
  for (const auto& e : errors) {
    if (e.empty()) continue;
    ++failed;
    all += "\n  " + e;
  }
  if (failed > 0) {
    throw CliError(std::to_string(failed) + " of " + std::to_string(count) + " instances failed:" + all);
  }
}

fs::path DataDir() {
  if (const char* env = std::getenv("CCKG_DATA_DIR")) return env;
  return CCKG_DATA_DIR;
}

// A template argument is a file path or a family name resolved against
// the shipped templates for the chosen style.
fs::path ResolveTemplates(const std::string& spec, const std::string& style) {
  if (fs::exists(spec)) return spec;
  const fs::path candidate = DataDir() / "templates" / (spec + "_" + style + ".tsv");
  if (fs::exists(candidate)) return candidate;
  throw CliError("no template file or family '" + spec + "' (looked for " + candidate.string() + ")");
}

// Input checksums plus the command configuration. Worker count is left
// out because outputs do not depend on it.
class Manifest {
 public:
  explicit Manifest(std::string command) { doc_["command"] = std::move(command); doc_["version"] = cckg_version(); }
  json& config() { return doc_["config"]; }
  void Input(const std::string& name, const fs::path& path) {
    doc_["inputs"][name] = {{"path", path.string()}, {"fnv1a64", ChecksumHex(path)}};
  }
  void InputDir(const std::string& name, const fs::path& dir, const std::vector<fs::path>& files) {
    json list = json::array();
    for (const auto& f : files) list.push_back({{"file", f.filename().string()}, {"fnv1a64", ChecksumHex(f)}});
    doc_["inputs"][name] = {{"path", dir.string()}, {"files", list}};
  }
  void Output(const fs::path& path) {
    doc_["outputs"].push_back({{"file", path.filename().string()}, {"fnv1a64", ChecksumHex(path)}});
  }
  void Write(const fs::path& path) { WriteAtomic(path, doc_.dump(2) + "\n"); }

 private:
  json doc_;
};

struct EncoderArgs {
  std::string kind = "mock";
  size_t dim = 0;
  std::string texts;
  std::string text_embeddings;

  void Register(CLI::App* app) {
    app->add_option("--encoder", kind, "Sentence encoder")->check(CLI::IsMember({"mock", "files"}));
    app->add_option("--dim", dim, "Mock encoder dimension");
    app->add_option("--texts", texts, "Texts file for the files encoder");
    app->add_option("--text-embeddings", text_embeddings, "EMB1 rows for --texts");
  }

  EncoderPtr Open(size_t default_dim) const {
    cckg_encoder* enc = nullptr;
    if (kind == "mock") {
      Check(cckg_encoder_mock(dim ? dim : default_dim, &enc), "mock encoder");
    } else {
      if (texts.empty() || text_embeddings.empty()) {
        throw CliError("--encoder files needs --texts and --text-embeddings");
      }
      Check(cckg_encoder_from_files(texts.c_str(), text_embeddings.c_str(), &enc), "files encoder");
    }
    return EncoderPtr(enc);
  }

  void Describe(Manifest& m, size_t effective_dim) const {
    m.config()["encoder"] = kind;
    m.config()["dim"] = effective_dim;
    if (kind == "files") {
      m.Input("texts", texts);
      m.Input("text_embeddings", text_embeddings);
    }
  }
};

constexpr size_t kDefaultDim = 128;

KgPtr OpenKg(const std::string& path, const std::vector<std::string>& exclude) {
  std::vector<const char*> ptrs;
  for (const auto& r : exclude) ptrs.push_back(r.c_str());
  cckg_kg* kg = nullptr;
  Check(cckg_kg_load(path.c_str(), ptrs.data(), ptrs.size(), &kg), "load KG " + path);
  return KgPtr(kg);
}

TemplatesPtr OpenTemplates(const std::vector<std::string>& specs, const std::string& style) {
  std::vector<std::string> paths;
  for (const auto& s : specs) paths.push_back(ResolveTemplates(s, style).string());
  std::vector<const char*> ptrs;
  for (const auto& p : paths) ptrs.push_back(p.c_str());
  cckg_templates* t = nullptr;
  Check(cckg_templates_load(ptrs.data(), ptrs.size(), &t), "load templates");
  return TemplatesPtr(t);
}

// ---- index ---------------------------------------------------------------

struct IndexArgs {
  std::string kg, out;
  std::vector<std::string> exclude;
};

void RunIndex(const IndexArgs& a) {
  auto kg = OpenKg(a.kg, a.exclude);
  Check(cckg_kg_save_snapshot(kg.get(), a.out.c_str()), "save snapshot");
  Manifest m("index");
  m.config()["exclude_relations"] = a.exclude;
  m.Input("kg", a.kg);
  m.Output(a.out);
  m.Write(a.out + ".manifest.json");
  std::cout << "concepts " << cckg_kg_concept_count(kg.get()) << "\nrelations "
            << cckg_kg_relation_count(kg.get()) << "\ntriplets " << cckg_kg_triplet_count(kg.get())
            << "\n";
}

// ---- verbalize -----------------------------------------------------------

struct VerbalizeArgs {
  std::string kg, out, concepts_out, style = "natural";
  std::vector<std::string> exclude, templates;
};

void RunVerbalize(const VerbalizeArgs& a) {
  auto kg = OpenKg(a.kg, a.exclude);
  auto tpl = OpenTemplates(a.templates, a.style);
  size_t lines = 0;
  Check(cckg_verbalize_all(kg.get(), tpl.get(), a.out.c_str(), &lines), "verbalize");
  Manifest m("verbalize");
  m.config()["exclude_relations"] = a.exclude;
  m.config()["style"] = a.style;
  m.config()["templates"] = a.templates;
  m.Input("kg", a.kg);
  m.Output(a.out);
  if (!a.concepts_out.empty()) {
    Check(cckg_write_concept_texts(kg.get(), a.concepts_out.c_str(), nullptr), "concept texts");
    m.Output(a.concepts_out);
  }
  m.Write(a.out + ".manifest.json");
  std::cout << "sentences " << lines << "\n";
}

// ---- embed ---------------------------------------------------------------

struct EmbedArgs {
  std::string in, out, source;
  EncoderArgs encoder;
};

void RunEmbed(const EmbedArgs& a) {
  auto enc = a.encoder.Open(kDefaultDim);
  size_t rows = 0;
  const std::string source = a.source.empty() ? fs::path(a.in).filename().string() : a.source;
  Check(cckg_embeddings_encode_lines(enc.get(), a.in.c_str(), a.out.c_str(), source.c_str(), &rows),
        "embed");
  Manifest m("embed");
  a.encoder.Describe(m, cckg_encoder_dim(enc.get()));
  m.config()["source"] = source;
  m.Input("texts_in", a.in);
  m.Output(a.out);
  m.Write(a.out + ".manifest.json");
  std::cout << "rows " << rows << " dim " << cckg_encoder_dim(enc.get()) << "\n";
}

// ---- extract -------------------------------------------------------------

struct ExtractArgs {
  std::string kg, embeddings, queries, out, pairs = "all", mode = "weighted";
  std::vector<std::string> exclude;
  size_t m = 1, k = 1, jobs = 1;
  uint64_t seed = 0;
  EncoderArgs encoder;
};

void RunExtract(const ExtractArgs& a) {
  auto kg = OpenKg(a.kg, a.exclude);
  cckg_embeddings* emb_raw = nullptr;
  size_t renormalized = 0;
  Check(cckg_embeddings_load(a.embeddings.c_str(), &emb_raw, &renormalized), "load embeddings");
  EmbeddingsPtr emb(emb_raw);
  if (renormalized > 0) {
    std::cerr << "warning: renormalized " << renormalized << " embedding rows\n";
  }
  auto enc = a.encoder.Open(cckg_embeddings_dim(emb.get()));
  Check(cckg_embeddings_check_alignment(kg.get(), emb.get(), enc.get()), "alignment");

  std::vector<std::string> lines;
  std::vector<std::string> ids;
  std::set<std::string> seen;
  size_t line_no = 0;
  for (auto& line : ReadLines(a.queries)) {
    ++line_no;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::string id;
    try {
      const auto q = json::parse(line);
      id = q.at("id").get<std::string>();
    } catch (const std::exception& e) {
      throw CliError(a.queries + ":" + std::to_string(line_no) + ": " + e.what());
    }
    RequireSafeId(id);
    if (!seen.insert(id).second) throw CliError("duplicate argument id '" + id + "'");
    ids.push_back(id);
    lines.push_back(std::move(line));
  }

  cckg_extract_options opts;
  cckg_extract_options_init(&opts);
  opts.m = a.m;
  opts.k = a.k;
  opts.pairs = a.pairs.c_str();
  opts.mode = a.mode.c_str();
  opts.seed = a.seed;

  fs::create_directories(a.out);
  ParallelFor(lines.size(), a.jobs, [&](size_t i) {
    cckg_graph* g = nullptr;
    Check(cckg_extract(kg.get(), emb.get(), enc.get(), lines[i].c_str(), &opts, &g), "extract " + ids[i]);
    GraphPtr graph(g);
    char* text = nullptr;
    Check(cckg_graph_to_json(graph.get(), &text), "serialize " + ids[i]);
    WriteAtomic(fs::path(a.out) / (ids[i] + ".json"), TakeString(text));
  });

  Manifest m("extract");
  m.config()["exclude_relations"] = a.exclude;
  m.config()["m"] = a.m;
  m.config()["k"] = a.k;
  m.config()["pairs"] = a.pairs;
  m.config()["mode"] = a.mode;
  m.config()["seed"] = a.seed;
  a.encoder.Describe(m, cckg_encoder_dim(enc.get()));
  m.Input("kg", a.kg);
  m.Input("embeddings", a.embeddings);
  m.Input("queries", a.queries);
  for (const auto& id : ids) m.Output(fs::path(a.out) / (id + ".json"));
  m.Write(fs::path(a.out) / "manifest.json");
  std::cout << "graphs " << ids.size() << "\n";
}

// ---- prune ---------------------------------------------------------------

struct PruneArgs {
  std::string in, out, ranker = "similarity";
  double fraction = 1.0, damping = 0.85;
  size_t jobs = 1;
  EncoderArgs encoder;
};

GraphPtr ReadGraph(const fs::path& path) {
  cckg_graph* g = nullptr;
  Check(cckg_graph_from_json(ReadText(path).c_str(), &g), "read " + path.string());
  return GraphPtr(g);
}

void RunPrune(const PruneArgs& a) {
  const auto files = JsonFiles(a.in);
  EncoderPtr enc;
  if (a.ranker == "similarity") enc = a.encoder.Open(kDefaultDim);
  cckg_prune_options opts;
  cckg_prune_options_init(&opts);
  opts.ranker = a.ranker.c_str();
  opts.fraction = a.fraction;
  opts.damping = a.damping;
  fs::create_directories(a.out);
  ParallelFor(files.size(), a.jobs, [&](size_t i) {
    auto graph = ReadGraph(files[i]);
    cckg_graph* pruned = nullptr;
    Check(cckg_prune(graph.get(), enc.get(), &opts, &pruned), "prune " + files[i].string());
    GraphPtr out(pruned);
    char* text = nullptr;
    Check(cckg_graph_to_json(out.get(), &text), "serialize");
    WriteAtomic(fs::path(a.out) / files[i].filename(), TakeString(text));
  });
  Manifest m("prune");
  m.config()["ranker"] = a.ranker;
  m.config()["fraction"] = a.fraction;
  if (a.ranker == "pagerank") {
    m.config()["damping"] = a.damping;
  } else {
    a.encoder.Describe(m, cckg_encoder_dim(enc.get()));
  }
  m.InputDir("graphs", a.in, files);
  for (const auto& f : files) m.Output(fs::path(a.out) / f.filename());
  m.Write(fs::path(a.out) / "manifest.json");
  std::cout << "graphs " << files.size() << "\n";
}

// ---- features ------------------------------------------------------------

struct FeaturesArgs {
  std::string in, out, nli, labels;
  size_t jobs = 1;
  EncoderArgs encoder;
};

void RunFeatures(const FeaturesArgs& a) {
  const auto files = JsonFiles(a.in);
  auto enc = a.encoder.Open(kDefaultDim);

  std::map<std::string, std::array<double, 3>> nli;
  if (!a.nli.empty()) {
    size_t line_no = 0;
    for (const auto& line : ReadLines(a.nli)) {
      ++line_no;
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        const auto j = json::parse(line);
        nli[j.at("id").get<std::string>()] = {j.at("entail").get<double>(), j.at("neutral").get<double>(),
                                              j.at("contradict").get<double>()};
      } catch (const std::exception& e) {
        throw CliError(a.nli + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
  std::map<std::string, std::string> labels;
  if (!a.labels.empty()) {
    for (const auto& line : ReadLines(a.labels)) {
      if (line.empty()) continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos) throw CliError(a.labels + ": expected id<TAB>label rows");
      labels[line.substr(0, tab)] = line.substr(tab + 1);
    }
  }

  const size_t nf = cckg_feature_count();
  std::vector<std::string> ids(files.size());
  std::vector<double> values(files.size() * nf);
  ParallelFor(files.size(), a.jobs, [&](size_t i) {
    auto graph = ReadGraph(files[i]);
    char* id = nullptr;
    Check(cckg_graph_id(graph.get(), &id), "graph id");
    ids[i] = TakeString(id);
    if (ids[i].empty()) ids[i] = files[i].stem().string();
    const double* probs = nullptr;
    if (!a.nli.empty()) {
      const auto it = nli.find(ids[i]);
      if (it == nli.end()) throw CliError("no NLI scores for '" + ids[i] + "'");
      probs = it->second.data();
    }
    Check(cckg_features(graph.get(), enc.get(), probs, values.data() + i * nf, nf), "features " + ids[i]);
  });

  std::vector<const char*> id_ptrs, label_ptrs;
  for (const auto& id : ids) {
    id_ptrs.push_back(id.c_str());
    if (!a.labels.empty()) {
      const auto it = labels.find(id);
      if (it == labels.end()) throw CliError("no label for '" + id + "'");
      label_ptrs.push_back(it->second.c_str());
    }
  }
  fs::create_directories(a.out);
  const fs::path csv = fs::path(a.out) / "features.csv";
  Check(cckg_features_export(id_ptrs.data(), values.data(), label_ptrs.empty() ? nullptr : label_ptrs.data(),
                             ids.size(), csv.c_str()),
        "export features");
  Manifest m("features");
  a.encoder.Describe(m, cckg_encoder_dim(enc.get()));
  m.InputDir("graphs", a.in, files);
  if (!a.nli.empty()) m.Input("nli", a.nli);
  if (!a.labels.empty()) m.Input("labels", a.labels);
  m.Output(csv);
  m.Write(fs::path(a.out) / "manifest.json");
  std::cout << "rows " << ids.size() << "\n";
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string pred, gold, out, style = "natural";
  std::vector<std::string> templates;
  double ged_timeout = 1.0;
  EncoderArgs encoder;
};

void RunEval(const EvalArgs& a) {
  auto enc = a.encoder.Open(kDefaultDim);
  TemplatesPtr tpl;
  if (!a.templates.empty()) tpl = OpenTemplates(a.templates, a.style);
  cckg_eval_options opts;
  cckg_eval_options_init(&opts);
  opts.encoder = enc.get();
  opts.templates = tpl.get();
  opts.ged_timeout_seconds = a.ged_timeout;
  fs::create_directories(a.out);
  const fs::path table_path = fs::path(a.out) / "report.txt";
  const fs::path csv_path = fs::path(a.out) / "report.csv";
  char* table = nullptr;
  Check(cckg_evaluate_corpus(a.pred.c_str(), a.gold.c_str(), &opts, table_path.c_str(), csv_path.c_str(),
                             nullptr, &table),
        "eval");
  std::cout << TakeString(table);
  Manifest m("eval");
  a.encoder.Describe(m, cckg_encoder_dim(enc.get()));
  m.config()["style"] = a.style;
  m.config()["templates"] = a.templates;
  m.config()["ged_timeout"] = a.ged_timeout;
  m.Output(table_path);
  m.Output(csv_path);
  m.Write(fs::path(a.out) / "manifest.json");
}

// ---- export-dot ----------------------------------------------------------

struct DotArgs {
  std::string in, out;
};

void RunExportDot(const DotArgs& a) {
  const auto files = JsonFiles(a.in);
  fs::create_directories(a.out);
  for (const auto& f : files) {
    auto graph = ReadGraph(f);
    char* dot = nullptr;
    Check(cckg_graph_to_dot(graph.get(), &dot), "dot " + f.string());
    WriteAtomic(fs::path(a.out) / (f.stem().string() + ".dot"), TakeString(dot));
  }
  Manifest m("export-dot");
  m.InputDir("graphs", a.in, files);
  for (const auto& f : files) m.Output(fs::path(a.out) / (f.stem().string() + ".dot"));
  m.Write(fs::path(a.out) / "manifest.json");
  std::cout << "graphs " << files.size() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contextualized commonsense knowledge graph extraction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cckg_version()));

  IndexArgs index;
  auto* cmd_index = app.add_subcommand("index", "Load a triplet TSV and write a binary snapshot");
  cmd_index->add_option("--kg", index.kg, "Triplet TSV or snapshot")->required();
  cmd_index->add_option("--exclude-relation", index.exclude, "Relation to drop (repeatable)");
  cmd_index->add_option("--out", index.out, "Snapshot path")->required();

  VerbalizeArgs verbalize;
  auto* cmd_verb = app.add_subcommand("verbalize", "Render every triplet as a sentence");
  cmd_verb->add_option("--kg", verbalize.kg)->required();
  cmd_verb->add_option("--exclude-relation", verbalize.exclude);
  cmd_verb->add_option("--templates", verbalize.templates, "Template file or family (repeatable)")->required();
  cmd_verb->add_option("--style", verbalize.style)->check(CLI::IsMember({"natural", "static"}));
  cmd_verb->add_option("--out", verbalize.out, "Sentences, one per triplet")->required();
  cmd_verb->add_option("--concepts-out", verbalize.concepts_out, "Concept texts, one per concept");

  EmbedArgs embed;
  auto* cmd_embed = app.add_subcommand("embed", "Embed the lines of a text file into EMB1");
  cmd_embed->add_option("--in", embed.in, "Text file")->required();
  cmd_embed->add_option("--out", embed.out, "EMB1 path")->required();
  cmd_embed->add_option("--source", embed.source, "Source name for the sidecar");
  embed.encoder.Register(cmd_embed);

  ExtractArgs extract;
  auto* cmd_extract = app.add_subcommand("extract", "Extract one graph per argument");
  cmd_extract->add_option("--kg", extract.kg)->required();
  cmd_extract->add_option("--exclude-relation", extract.exclude);
  cmd_extract->add_option("--embeddings", extract.embeddings, "Triplet embeddings (EMB1)")->required();
  cmd_extract->add_option("--queries", extract.queries, "Arguments JSONL")->required();
  cmd_extract->add_option("-m", extract.m, "Anchor triplets per side")->check(CLI::PositiveNumber);
  cmd_extract->add_option("-k", extract.k, "Paths per anchor pair")->check(CLI::PositiveNumber);
  cmd_extract->add_option("--pairs", extract.pairs)->check(CLI::IsMember({"all", "cross"}));
  cmd_extract->add_option("--mode", extract.mode)
      ->check(CLI::IsMember({"weighted", "unweighted-one", "unweighted-all"}));
  cmd_extract->add_option("--seed", extract.seed);
  cmd_extract->add_option("--jobs", extract.jobs)->check(CLI::PositiveNumber);
  cmd_extract->add_option("--out", extract.out, "Output directory")->required();
  extract.encoder.Register(cmd_extract);

  PruneArgs prune;
  auto* cmd_prune = app.add_subcommand("prune", "Prune extracted graphs");
  cmd_prune->add_option("--in", prune.in, "Directory of graph JSON")->required();
  cmd_prune->add_option("--ranker", prune.ranker)->check(CLI::IsMember({"similarity", "pagerank"}));
  cmd_prune->add_option("--fraction", prune.fraction)->check(CLI::Range(0.0, 1.0));
  cmd_prune->add_option("--damping", prune.damping)->check(CLI::Range(0.0, 1.0));
  cmd_prune->add_option("--jobs", prune.jobs)->check(CLI::PositiveNumber);
  cmd_prune->add_option("--out", prune.out, "Output directory")->required();
  prune.encoder.Register(cmd_prune);

  FeaturesArgs features;
  auto* cmd_feat = app.add_subcommand("features", "Compute the feature matrix");
  cmd_feat->add_option("--in", features.in, "Directory of graph JSON")->required();
  cmd_feat->add_option("--nli", features.nli, "JSONL {id, entail, neutral, contradict}");
  cmd_feat->add_option("--labels", features.labels, "TSV id<TAB>label");
  cmd_feat->add_option("--jobs", features.jobs)->check(CLI::PositiveNumber);
  cmd_feat->add_option("--out", features.out, "Output directory")->required();
  features.encoder.Register(cmd_feat);

  EvalArgs eval;
  auto* cmd_eval = app.add_subcommand("eval", "Score predicted graphs against gold graphs");
  cmd_eval->add_option("--pred", eval.pred, "Predicted graphs (JSON or TSV)")->required();
  cmd_eval->add_option("--gold", eval.gold, "Gold graphs (TSV or JSON)")->required();
  cmd_eval->add_option("--templates", eval.templates, "Templates for triplet sentences");
  cmd_eval->add_option("--style", eval.style)->check(CLI::IsMember({"natural", "static"}));
  cmd_eval->add_option("--ged-timeout", eval.ged_timeout, "Seconds per GED search above 10 nodes");
  cmd_eval->add_option("--out", eval.out, "Output directory")->required();
  eval.encoder.Register(cmd_eval);

  DotArgs dot;
  auto* cmd_dot = app.add_subcommand("export-dot", "Write Graphviz files");
  cmd_dot->add_option("--in", dot.in)->required();
  cmd_dot->add_option("--out", dot.out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_index->parsed()) RunIndex(index);
    if (cmd_verb->parsed()) RunVerbalize(verbalize);
    if (cmd_embed->parsed()) RunEmbed(embed);
    if (cmd_extract->parsed()) RunExtract(extract);
    if (cmd_prune->parsed()) RunPrune(prune);
    if (cmd_feat->parsed()) RunFeatures(features);
    if (cmd_eval->parsed()) RunEval(eval);
    if (cmd_dot->parsed()) RunExportDot(dot);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
