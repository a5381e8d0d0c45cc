// Copyright 2026 The Hetsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hetsum command line: summarize groups, generate datasets, evaluate,
// build and query keyword indexes, train the default language model.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hetsum/bridge.hpp"
#include "hetsum/corpus.hpp"
#include "hetsum/dataset.hpp"
#include "hetsum/error.hpp"
#include "hetsum/eval.hpp"
#include "hetsum/ngram_lm.hpp"
#include "hetsum/pipeline.hpp"
#include "hetsum/query_index.hpp"

namespace {

using hetsum::PipelineConfig;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hetsum::IoError("cannot open " + path);
  return in;
}

// Plain documents, or a dataset whose group members are pooled by id.
std::vector<hetsum::Document> load_traceback_docs(const std::string& path) {
  std::string first;
  {
    auto in = open_in(path);
    while (std::getline(in, first) && first.find_first_not_of(" \t\r") == std::string::npos) {
    }
  }
  const auto head = nlohmann::json::parse(first, nullptr, false);
  if (!head.is_object() || !head.contains("docs")) return hetsum::ingest_jsonl(path).documents;
  auto in = open_in(path);
  std::vector<hetsum::Document> docs;
  std::set<std::string> seen;
  for (const auto& g : hetsum::read_dataset(in)) {
    for (auto& d : hetsum::group_documents(g)) {
      if (seen.insert(d.id).second) docs.push_back(std::move(d));
    }
  }
  return docs;
}

// Writes to `path`, or stdout for "-" / empty.
void write_out(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hetsum::IoError("cannot write " + path);
  out << content;
  if (!out) throw hetsum::IoError("write failed: " + path);
}

std::string dump(const nlohmann::ordered_json& j) {
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// A whole-file JSON document, or one per non-blank line.
std::vector<nlohmann::json> read_json_records(const std::string& path) {
  auto in = open_in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::vector<nlohmann::json> out;
  try {
    out.push_back(nlohmann::json::parse(text));
    return out;
  } catch (const nlohmann::json::exception&) {
  }
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw hetsum::ParseError(e.what(), lineno);
    }
  }
  return out;
}

struct SummarizeArgs {
  std::string input;
  std::string dataset;
  std::string out;
  std::string config;
  std::string lm;
  std::string model_bridge;
  std::string mode = "drop";
  PipelineConfig cfg;
};

int run_summarize(SummarizeArgs& a, const CLI::App& sub) {
  PipelineConfig cfg = a.cfg;
  if (!a.config.empty()) {
    auto in = open_in(a.config);
    auto j = nlohmann::json::parse(in);
    if (j.contains("config") && j["config"].is_object()) j = j["config"];
    cfg = hetsum::config_from_json(j);
    // Explicit flags win over the file.
    if (sub.count("--damping")) cfg.damping = a.cfg.damping;
    if (sub.count("--tau")) cfg.tau = a.cfg.tau;
    if (sub.count("--tau-cluster")) cfg.tau_cluster = a.cfg.tau_cluster;
    if (sub.count("--k")) cfg.fusion.k = a.cfg.fusion.k;
    if (sub.count("--alpha")) cfg.fusion.alpha = a.cfg.fusion.alpha;
    if (sub.count("--dsim")) cfg.d_sim = a.cfg.d_sim;
    if (sub.count("--rcr-bridge")) cfg.rcr_bridge = a.cfg.rcr_bridge;
    if (sub.count("--workers")) cfg.workers = a.cfg.workers;
    if (sub.count("--max-tokens")) cfg.fusion.max_tokens = a.cfg.fusion.max_tokens;
    if (sub.count("--min-tokens")) cfg.fusion.min_tokens = a.cfg.fusion.min_tokens;
  }
  if (sub.count("--mode")) cfg.mode = a.mode == "drop" ? hetsum::SelectionMode::kDrop : hetsum::SelectionMode::kTopPercent;

  std::optional<hetsum::NGramLM> lm;
  if (!a.lm.empty()) lm = hetsum::NGramLM::load(a.lm);

  std::unique_ptr<hetsum::BridgeClient> bridge;
  std::unique_ptr<hetsum::BridgeEmbedder> bridge_embedder;
  std::unique_ptr<hetsum::BridgeScorer> bridge_scorer;
  if (!a.model_bridge.empty()) {
    bridge = hetsum::BridgeClient::open(a.model_bridge, std::chrono::milliseconds(cfg.bridge_timeout_ms));
    bridge->ping();
    bridge_embedder = std::make_unique<hetsum::BridgeEmbedder>(*bridge);
    bridge_scorer = std::make_unique<hetsum::BridgeScorer>(*bridge, 4);
  }

  auto summarize = [&](const std::vector<hetsum::Document>& docs) {
    hetsum::Providers p;
    // Bridge failures fall back to the group-trained defaults.
    std::unique_ptr<hetsum::TfidfEmbedder> tfidf;
    std::unique_ptr<hetsum::NGramLM> group_lm;
    std::unique_ptr<hetsum::FallbackEmbedder> fe;
    std::unique_ptr<hetsum::FallbackScorer> fs;
    if (lm) p.scorer = &*lm;
    if (bridge) {
      std::vector<hetsum::Sentence> all;
      std::vector<std::vector<std::string>> seqs;
      for (const auto& d : docs) {
        for (const auto& s : d.sentences) {
          all.push_back(s);
          seqs.push_back(s.lowered());
        }
      }
      tfidf = std::make_unique<hetsum::TfidfEmbedder>(hetsum::TfidfEmbedder::build(all));
      fe = std::make_unique<hetsum::FallbackEmbedder>(*bridge_embedder, *tfidf);
      p.embedder = fe.get();
      if (!lm) {
        group_lm = std::make_unique<hetsum::NGramLM>(hetsum::NGramLM::train(seqs, cfg.lm_order, cfg.lm_k));
        fs = std::make_unique<hetsum::FallbackScorer>(*bridge_scorer, *group_lm);
        p.scorer = fs.get();
      }
    }
    return hetsum::summarize_group(docs, cfg, p);
  };

  if (!a.input.empty()) {
    auto ingest = hetsum::ingest_jsonl(a.input);
    if (ingest.skipped_empty) std::cerr << "warning: skipped " << ingest.skipped_empty << " empty document(s)\n";
    const auto summary = summarize(ingest.documents);
    write_out(a.out, dump(hetsum::to_json(summary)));
    return 0;
  }
  auto in = open_in(a.dataset);
  const auto groups = hetsum::read_dataset(in);
  std::string out;
  for (const auto& g : groups) {
    const auto summary = summarize(hetsum::group_documents(g));
    nlohmann::ordered_json j;
    j["group_id"] = g.group_id;
    j["summary"] = summary.text();
    const auto full = hetsum::to_json(summary);
    for (const auto& [k, v] : full.items()) j[k] = v;
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
  }
  write_out(a.out, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unsupervised summarization of heterogeneous document groups"};
  app.require_subcommand(1);

  SummarizeArgs sa;
  auto* sum = app.add_subcommand("summarize", "Summarize one group (JSONL documents) or every group of a dataset");
  auto* in_opt = sum->add_option("--input", sa.input, "Group as JSONL documents {id?, text, summary?}");
  auto* ds_opt = sum->add_option("--dataset", sa.dataset, "Dataset JSONL from gen-dataset; writes one summary per line");
  in_opt->excludes(ds_opt);
  sum->add_option("--out", sa.out, "Output path (default stdout)");
  sum->add_option("--config", sa.config, "Config JSON (or a previous summary, whose snapshot is reused)");
  sum->add_option("--damping", sa.cfg.damping, "TextRank damping factor")->capture_default_str();
  sum->add_option("--tau", sa.cfg.tau, "TextRank convergence threshold")->capture_default_str();
  sum->add_option("--tau-cluster", sa.cfg.tau_cluster, "Initial clustering distance threshold")->capture_default_str();
  sum->add_option("--k", sa.cfg.fusion.k, "Fusion paths per cluster")->capture_default_str();
  sum->add_option("--alpha", sa.cfg.fusion.alpha, "Edge weight share of the path cost")->capture_default_str();
  sum->add_option("--dsim", sa.cfg.d_sim, "Distinctness threshold")->capture_default_str();
  sum->add_option("--max-tokens", sa.cfg.fusion.max_tokens, "Longest fusion")->capture_default_str();
  sum->add_option("--min-tokens", sa.cfg.fusion.min_tokens, "Shortest fusion")->capture_default_str();
  sum->add_option("--mode", sa.mode, "Salient selection: drop or top_percent")
      ->check(CLI::IsMember({"drop", "top_percent"}));
  sum->add_option("--workers", sa.cfg.workers, "Worker threads (0 = all cores)")->capture_default_str();
  sum->add_option("--rcr-bridge", sa.cfg.rcr_bridge, "Bridge address for the coreference post-pass");
  sum->add_option("--model-bridge", sa.model_bridge, "Bridge address for embeddings and token scores");
  sum->add_option("--lm", sa.lm, "N-gram model file (default: trained on the group)");

  std::string corpus, ds_out;
  std::size_t scale = 10, groups = 100;
  std::uint64_t seed = 0;
  bool stats = false;
  auto* gen = app.add_subcommand("gen-dataset", "Generate document groups from a summary-annotated corpus");
  gen->add_option("--corpus", corpus, "Corpus JSONL with summaries")->required();
  gen->add_option("--scale", scale, "Documents per group")->capture_default_str();
  gen->add_option("--groups", groups, "Number of groups")->capture_default_str();
  gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
  gen->add_option("--out", ds_out, "Output JSONL (default stdout)");
  gen->add_flag("--stats", stats, "Print dataset statistics to stderr");

  std::string cands, refs, metrics = "rouge1,rouge2,rougeL", report, eval_lm, field = "f1";
  auto* ev = app.add_subcommand("evaluate", "Score candidate summaries against references");
  ev->add_option("--candidates", cands, "Candidate JSONL")->required();
  ev->add_option("--references", refs, "Reference JSONL")->required();
  ev->add_option("--metrics", metrics, "Comma list of rouge1,rouge2,rougeL,dalechall,logprob")->capture_default_str();
  ev->add_option("--report", report, "Full JSON report path");
  ev->add_option("--lm", eval_lm, "N-gram model for the logprob metric");
  ev->add_option("--field", field, "ROUGE field printed: recall, precision or f1")
      ->check(CLI::IsMember({"recall", "precision", "f1"}))
      ->capture_default_str();

  std::string summaries, keywords, keywords_file, idx_out;
  bool all_terms = false;
  auto* idx = app.add_subcommand("index", "Build a keyword index over summary sentences");
  idx->add_option("--summaries", summaries, "Summary JSON or JSONL (one group per line)")->required();
  idx->add_option("--keywords", keywords, "Comma list of keywords");
  idx->add_option("--keywords-file", keywords_file, "One keyword per line");
  idx->add_flag("--all-terms", all_terms, "Index every summary token");
  idx->add_option("--out", idx_out, "Index JSON (default stdout)");

  std::string index_path, term, docs_path;
  auto* q = app.add_subcommand("query", "Look up a keyword in an index");
  q->add_option("--index", index_path, "Index JSON")->required();
  q->add_option("--term", term, "Keyword")->required();
  q->add_option("--docs", docs_path, "Documents or dataset JSONL; prints the traced-back source texts");

  std::string lm_input, lm_out;
  std::size_t order = 3;
  double smoothing = 0.01;
  auto* tl = app.add_subcommand("train-lm", "Train the add-k n-gram model on JSONL documents");
  tl->add_option("--input", lm_input, "Documents JSONL")->required();
  tl->add_option("--order", order, "N-gram order")->capture_default_str();
  tl->add_option("--smoothing", smoothing, "Add-k constant")->capture_default_str();
  tl->add_option("--out", lm_out, "Model path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sum->parsed()) {
      if (sa.input.empty() && sa.dataset.empty()) throw CLI::RequiredError("--input or --dataset");
      return run_summarize(sa, *sum);
    }
    if (gen->parsed()) {
      const auto ingest = hetsum::ingest_jsonl(corpus);
      const auto ds = hetsum::generate_groups(ingest.documents, scale, groups, seed);
      std::ostringstream out;
      hetsum::write_dataset(out, ds);
      write_out(ds_out, out.str());
      if (stats) {
        const auto st = hetsum::dataset_stats(ds);
        std::cerr << "groups " << st.groups << "\npool " << ds.pool_size << "\nmean_article_words "
                  << st.mean_article_words << "\nmean_summary_words " << st.mean_summary_words
                  << "\nmean_distinct_sources " << st.mean_distinct_sources << "\n";
      }
      return 0;
    }
    if (ev->parsed()) {
      auto ci = open_in(cands);
      auto ri = open_in(refs);
      const auto pairs = hetsum::pair_records(ci, ri);
      const auto names = split_list(metrics);
      std::optional<hetsum::NGramLM> lm;
      if (!eval_lm.empty()) lm = hetsum::NGramLM::load(eval_lm);
      const auto rep = hetsum::evaluate_pairs(pairs, names, lm ? &*lm : nullptr);
      if (!report.empty()) write_out(report, dump(rep));
      for (const auto& m : names) {
        const auto& v = rep["mean"][m];
        std::printf("%s\t%.6f\n", m.c_str(), v.is_object() ? v[field].get<double>() : v.get<double>());
      }
      return 0;
    }
    if (idx->parsed()) {
      std::vector<hetsum::GroupSummary> groups_read;
      for (const auto& j : read_json_records(summaries)) groups_read.push_back(hetsum::summary_from_json(j));
      std::vector<std::string> words = split_list(keywords);
      if (!keywords_file.empty()) {
        auto in = open_in(keywords_file);
        std::string line;
        while (std::getline(in, line)) {
          if (!line.empty() && line.back() == '\r') line.pop_back();
          if (!line.empty()) words.push_back(line);
        }
      }
      if (all_terms) {
        const auto vocab = hetsum::summary_vocabulary(groups_read);
        words.insert(words.end(), vocab.begin(), vocab.end());
      }
      const auto index = hetsum::build_query_index(groups_read, words);
      write_out(idx_out, dump(index.to_json()));
      return 0;
    }
    if (q->parsed()) {
      auto in = open_in(index_path);
      const auto index = hetsum::QueryIndex::from_json(nlohmann::json::parse(in));
      std::vector<hetsum::Document> docs;
      if (!docs_path.empty()) docs = load_traceback_docs(docs_path);
      for (const auto& p : index.query(term)) {
        std::cout << p.group << '\t' << p.sentence << '\t' << p.text << '\t';
        for (std::size_t i = 0; i < p.doc_ids.size(); ++i) std::cout << (i ? "," : "") << p.doc_ids[i];
        std::cout << '\n';
        if (!docs.empty()) {
          for (const auto* d : hetsum::resolve_traceback(p, docs)) std::cout << "  " << d->id << ": " << d->raw_text << '\n';
        }
      }
      return 0;
    }
    if (tl->parsed()) {
      const auto ingest = hetsum::ingest_jsonl(lm_input);
      std::vector<std::vector<std::string>> seqs;
      for (const auto& d : ingest.documents) {
        for (const auto& s : d.sentences) seqs.push_back(s.lowered());
      }
      hetsum::NGramLM::train(seqs, order, smoothing).save(lm_out);
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
