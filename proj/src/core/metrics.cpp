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

#include "core/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "core/assignment.hpp"
#include "core/error.hpp"
#include "core/io.hpp"
#include "core/text.hpp"

namespace cckg {
namespace {

template <typename T>
size_t CountCommon(const std::vector<T>& a, const std::vector<T>& b) {
  size_t common = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++common;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return common;
}

std::string RelationWords(std::string_view relation) {
  std::string out;
  for (size_t i = 0; i < relation.size(); ++i) {
    const char c = relation[i];
    if (c == '_' || c == '-' || c == ' ') {
      if (!out.empty() && out.back() != ' ') out += ' ';
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c)) && !out.empty() && out.back() != ' ') out += ' ';
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::map<std::string, std::filesystem::path> ListGraphs(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    Fail(ErrorCode::kIo, "not a directory: " + dir.string());
  }
  std::map<std::string, std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext != ".json" && ext != ".tsv") continue;
    const auto name = entry.path().filename().string();
    if (name == "manifest.json" || name.ends_with(".manifest.json")) continue;
    const auto stem = entry.path().stem().string();
    if (!out.emplace(stem, entry.path()).second) {
      Fail(ErrorCode::kInvalidArgument, "duplicate graph id '" + stem + "' in " + dir.string());
    }
  }
  return out;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string NormalizeRelation(std::string_view raw) {
  std::string out;
  for (char c : Trim(raw)) {
    if (c == ' ' || c == '\t' || c == '_' || c == '-') continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

LabeledGraph MakeLabeledGraph(std::span<const LabeledTriplet> raw,
                              std::span<const std::string> extra_concepts) {
  std::map<LabeledTriplet, std::string> triplets;
  std::set<std::string> concepts;
  for (const auto& t : raw) {
    LabeledTriplet n{NormalizeLabel(t.head), NormalizeRelation(t.relation), NormalizeLabel(t.tail)};
    if (n.head.empty() || n.tail.empty() || n.relation.empty()) {
      Fail(ErrorCode::kFormat, "empty field in triplet");
    }
    concepts.insert(n.head);
    concepts.insert(n.tail);
    triplets.try_emplace(std::move(n), std::string(Trim(t.relation)));
  }
  for (const auto& c : extra_concepts) {
    auto n = NormalizeLabel(c);
    if (!n.empty()) concepts.insert(std::move(n));
  }
  LabeledGraph g;
  g.concepts.assign(concepts.begin(), concepts.end());
  for (auto& [t, text] : triplets) {
    g.triplets.push_back(t);
    g.relation_text.push_back(text);
  }
  return g;
}

LabeledGraph LoadGraphTsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<LabeledTriplet> raw;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const auto cols = SplitTabs(line);
    if (cols.size() != 3) {
      Fail(ErrorCode::kFormat, path.string() + ":" + std::to_string(line_no) +
                                   ": expected 3 tab-separated columns");
    }
    raw.push_back({std::string(cols[0]), std::string(cols[1]), std::string(cols[2])});
  }
  return MakeLabeledGraph(raw);
}

LabeledGraph GraphFromCckg(const Cckg& graph) {
  std::vector<LabeledTriplet> raw;
  for (const auto& e : graph.edges) {
    raw.push_back({graph.nodes[e.head].label, e.relation, graph.nodes[e.tail].label});
  }
  std::vector<std::string> labels;
  for (const auto& n : graph.nodes) labels.push_back(n.label);
  return MakeLabeledGraph(raw, labels);
}

LabeledGraph LoadGraphFile(const std::filesystem::path& path) {
  if (path.extension() == ".json") {
    try {
      return GraphFromCckg(CckgFromJson(ReadFile(path)));
    } catch (const Error& e) {
      Fail(e.code(), path.string() + ": " + e.what());
    }
  }
  return LoadGraphTsv(path);
}

Prf SetPrf(size_t matched, size_t predicted, size_t gold) {
  Prf r;
  r.precision = predicted == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(predicted);
  r.recall = gold == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(gold);
  const double s = r.precision + r.recall;
  r.f1 = s == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / s;
  return r;
}

Prf ConceptPrf(const LabeledGraph& pred, const LabeledGraph& gold) {
  return SetPrf(CountCommon(pred.concepts, gold.concepts), pred.concepts.size(), gold.concepts.size());
}

Prf TripletPrf(const LabeledGraph& pred, const LabeledGraph& gold) {
  return SetPrf(CountCommon(pred.triplets, gold.triplets), pred.triplets.size(), gold.triplets.size());
}

GedGraph ToGedGraph(const LabeledGraph& graph) {
  GedGraph g;
  g.labels = graph.concepts;
  auto index = [&](const std::string& label) {
    return static_cast<uint32_t>(std::lower_bound(g.labels.begin(), g.labels.end(), label) -
                                 g.labels.begin());
  };
  for (const auto& t : graph.triplets) g.edges.push_back({index(t.head), index(t.tail), t.relation});
  return g;
}

TripletVerbalizer MakeVerbalizer(const TemplateSet* templates) {
  return [templates](std::string_view head, std::string_view relation, std::string_view tail) {
    if (templates != nullptr && templates->contains(relation)) {
      return templates->Render(head, relation, tail);
    }
    return LabelToText(head) + " " + RelationWords(relation) + " " + LabelToText(tail);
  };
}

SimilarityMatrixFn EmbeddingSimilarity(const TextEncoder& encoder) {
  return [&encoder](std::span<const std::string> pred, std::span<const std::string> gold) {
    const auto a = EncodeAll(encoder, pred);
    const auto b = EncodeAll(encoder, gold);
    std::vector<std::vector<double>> out(pred.size(), std::vector<double>(gold.size(), 0.0));
    for (size_t i = 0; i < pred.size(); ++i) {
      for (size_t j = 0; j < gold.size(); ++j) {
        // Identical sentences have cosine 1; skip float rounding of the norm.
        out[i][j] = pred[i] == gold[j]
                        ? 1.0
                        : std::clamp((1.0 + Dot(a.row(i), b.row(j))) / 2.0, 0.0, 1.0);
      }
    }
    return out;
  };
}

Prf GraphBertScore(const LabeledGraph& pred, const LabeledGraph& gold,
                   const TripletVerbalizer& verbalize, const SimilarityMatrixFn& similarity) {
  if (pred.triplets.empty() || gold.triplets.empty()) return {};
  auto sentences = [&](const LabeledGraph& g) {
    std::vector<std::string> out;
    for (size_t i = 0; i < g.triplets.size(); ++i) {
      out.push_back(verbalize(g.triplets[i].head, g.relation_text[i], g.triplets[i].tail));
    }
    return out;
  };
  const auto ps = sentences(pred);
  const auto gs = sentences(gold);
  const auto matrix = similarity(ps, gs);
  if (matrix.size() != ps.size()) Fail(ErrorCode::kInternal, "similarity matrix has wrong shape");
  for (const auto& row : matrix) {
    if (row.size() != gs.size()) Fail(ErrorCode::kInternal, "similarity matrix has wrong shape");
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) Fail(ErrorCode::kInvalidArgument, "similarity outside [0, 1]");
    }
  }
  const double total = MaxAssignment(matrix).total;
  Prf r;
  r.precision = total / static_cast<double>(ps.size());
  r.recall = total / static_cast<double>(gs.size());
  const double s = r.precision + r.recall;
  r.f1 = s == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / s;
  return r;
}

GraphScore ScorePair(const LabeledGraph& pred, const LabeledGraph& gold, const ScoreContext& ctx) {
  GraphScore s;
  s.concepts = ConceptPrf(pred, gold);
  s.triplets = TripletPrf(pred, gold);
  const auto a = ToGedGraph(pred);
  const auto b = ToGedGraph(gold);
  const auto ged = GraphEditDistance(a, b, ctx.ged);
  s.ged = NormalizeGed(ged.distance, a, b);
  s.ged_exact = ged.exact;
  s.gbs = GraphBertScore(pred, gold, ctx.verbalize, ctx.similarity).f1;
  return s;
}

CorpusReport Aggregate(std::vector<std::string> ids, std::vector<GraphScore> scores,
                       std::vector<size_t> nodes, std::vector<size_t> edges) {
  CorpusReport r;
  r.ids = std::move(ids);
  r.scores = std::move(scores);
  r.nodes = std::move(nodes);
  r.edges = std::move(edges);
  const double n = static_cast<double>(r.scores.size());
  if (r.scores.empty()) return r;
  auto add = [](Prf& acc, const Prf& x) {
    acc.precision += x.precision;
    acc.recall += x.recall;
    acc.f1 += x.f1;
  };
  for (size_t i = 0; i < r.scores.size(); ++i) {
    const auto& s = r.scores[i];
    add(r.macro.concepts, s.concepts);
    add(r.macro.triplets, s.triplets);
    r.macro.ged += s.ged;
    r.macro.gbs += s.gbs;
    if (!s.ged_exact) ++r.approximate_ged;
    r.mean_nodes += static_cast<double>(r.nodes[i]);
    r.mean_edges += static_cast<double>(r.edges[i]);
  }
  for (Prf* p : {&r.macro.concepts, &r.macro.triplets}) {
    p->precision /= n;
    p->recall /= n;
    p->f1 /= n;
  }
  r.macro.ged /= n;
  r.macro.gbs /= n;
  r.macro.ged_exact = r.approximate_ged == 0;
  r.mean_nodes /= n;
  r.mean_edges /= n;
  return r;
}

CorpusReport EvaluateCorpus(const std::filesystem::path& pred_dir,
                            const std::filesystem::path& gold_dir, const ScoreContext& ctx) {
  const auto pred = ListGraphs(pred_dir);
  const auto gold = ListGraphs(gold_dir);
  std::vector<std::string> only_pred, only_gold;
  for (const auto& [id, p] : pred) {
    if (!gold.count(id)) only_pred.push_back(id);
  }
  for (const auto& [id, p] : gold) {
    if (!pred.count(id)) only_gold.push_back(id);
  }
  if (!only_pred.empty() || !only_gold.empty()) {
    std::string msg = "unmatched graph ids;";
    if (!only_pred.empty()) {
      msg += " only in " + pred_dir.string() + ":";
      for (const auto& id : only_pred) msg += " " + id;
      msg += ";";
    }
    if (!only_gold.empty()) {
      msg += " only in " + gold_dir.string() + ":";
      for (const auto& id : only_gold) msg += " " + id;
    }
    Fail(ErrorCode::kInvalidArgument, msg);
  }
  std::vector<std::string> ids;
  std::vector<GraphScore> scores;
  std::vector<size_t> nodes, edges;
  for (const auto& [id, pred_path] : pred) {
    const auto p = LoadGraphFile(pred_path);
    const auto g = LoadGraphFile(gold.at(id));
    ids.push_back(id);
    scores.push_back(ScorePair(p, g, ctx));
    nodes.push_back(p.concepts.size());
    edges.push_back(p.triplets.size());
  }
  return Aggregate(std::move(ids), std::move(scores), std::move(nodes), std::move(edges));
}

std::string FormatReportTable(const CorpusReport& r) {
  const std::vector<std::string> header = {"#nodes", "#edges", "C P", "C R", "C F1", "T P",
                                           "T R",    "T F1",   "GED", "G-BS"};
  const auto& m = r.macro;
  const std::vector<std::string> row = {
      Fixed(r.mean_nodes, 2),          Fixed(r.mean_edges, 2),
      Fixed(100 * m.concepts.precision, 2), Fixed(100 * m.concepts.recall, 2),
      Fixed(100 * m.concepts.f1, 2),   Fixed(100 * m.triplets.precision, 2),
      Fixed(100 * m.triplets.recall, 2), Fixed(100 * m.triplets.f1, 2),
      Fixed(m.ged, 4),                 Fixed(100 * m.gbs, 2)};
  std::string head_line, row_line;
  for (size_t i = 0; i < header.size(); ++i) {
    const size_t w = std::max(header[i].size(), row[i].size());
    if (i > 0) {
      head_line += "  ";
      row_line += "  ";
    }
    head_line += std::string(w - header[i].size(), ' ') + header[i];
    row_line += std::string(w - row[i].size(), ' ') + row[i];
  }
  std::string out = head_line + "\n" + row_line + "\n";
  out += "instances: " + std::to_string(r.ids.size());
  if (r.approximate_ged > 0) out += " (GED approximate for " + std::to_string(r.approximate_ged) + ")";
  out += "\n";
  return out;
}

std::string FormatReportCsv(const CorpusReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "id,nodes,edges,c_p,c_r,c_f1,t_p,t_r,t_f1,ged,ged_exact,gbs\n";
  auto line = [&](const std::string& id, double nodes, double edges, const GraphScore& s) {
    out << id << ',' << nodes << ',' << edges << ',' << s.concepts.precision << ','
        << s.concepts.recall << ',' << s.concepts.f1 << ',' << s.triplets.precision << ','
        << s.triplets.recall << ',' << s.triplets.f1 << ',' << s.ged << ','
        << (s.ged_exact ? 1 : 0) << ',' << s.gbs << '\n';
  };
  for (size_t i = 0; i < r.ids.size(); ++i) {
    line(r.ids[i], static_cast<double>(r.nodes[i]), static_cast<double>(r.edges[i]), r.scores[i]);
  }
  line("macro", r.mean_nodes, r.mean_edges, r.macro);
  return out.str();
}

}  // namespace cckg
