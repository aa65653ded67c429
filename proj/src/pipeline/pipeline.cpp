// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "corpuslens/csv.hpp"
#include "corpuslens/kernels.hpp"
#include "corpuslens/pipeline.hpp"
#include "corpuslens/svg.hpp"
#include "corpuslens/text.hpp"

namespace corpuslens::pipeline {

using nlohmann::json;

struct Pipeline::Loaded {
  std::optional<corpus::AbbreviationList> abbreviations;
  std::optional<corpus::TagLexicon> lexicon;
  std::optional<corpus::Corpus> corpus;
  std::optional<resources::VectorStore> vectors;
  std::optional<resources::LabelSet> labels;
  std::optional<resources::NormsLexicon> norms;
  std::optional<resources::SentenceEmbeddingSet> embeddings;
  std::optional<similarity::StopWords> stop_words;
  std::optional<features::ReferenceVocabulary> reference;
  std::optional<features::FeatureMatrix> features;
  std::map<std::string, json> coverage;
};

Pipeline::Pipeline(PipelineConfig cfg, Diagnostics* diag)
    : cfg_(std::move(cfg)), diag_(diag), hash_(config_hash(cfg_)), loaded_(std::make_unique<Loaded>()) {
  validate(cfg_);
}

Pipeline::~Pipeline() = default;

void Pipeline::record_input(const std::string& role, const std::string& path) {
  const auto p = resolve(cfg_, path);
  if (std::filesystem::is_directory(p)) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(p))
      if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) inputs_.push_back({role, path + "/" + f.filename().string(), sha256_file(f)});
    return;
  }
  inputs_.push_back({role, path, sha256_file(p)});
}

const corpus::Corpus& Pipeline::corpus() {
  auto& L = *loaded_;
  if (L.corpus) return *L.corpus;
  corpus::ParseOptions opts;
  opts.chunk_size = cfg_.chunk_size;
  if (cfg_.abbreviations) {
    L.abbreviations = corpus::AbbreviationList::load(resolve(cfg_, *cfg_.abbreviations));
    record_input("abbreviations", *cfg_.abbreviations);
    opts.abbreviations = &*L.abbreviations;
  }
  if (cfg_.lexicon) {
    L.lexicon = corpus::TagLexicon::load(resolve(cfg_, *cfg_.lexicon));
    record_input("lexicon", *cfg_.lexicon);
    opts.lexicon = &*L.lexicon;
  }
  corpus::Corpus c;
  for (const auto& d : cfg_.documents) {
    const auto p = resolve(cfg_, d.path);
    c.push_back(d.pretagged ? corpus::load_pretagged_document(p, d.id, opts) : corpus::load_document(p, d.id, opts));
    record_input("document:" + d.id, d.path);
  }
  L.corpus = std::move(c);
  return *L.corpus;
}

const resources::VectorStore* Pipeline::vectors_if_configured() {
  auto& L = *loaded_;
  if (L.vectors) return &*L.vectors;
  if (!cfg_.vectors) return nullptr;
  L.vectors = resources::load_vectors(resolve(cfg_, *cfg_.vectors), cfg_.vector_format, cfg_.case_fold, diag_);
  record_input("vectors", *cfg_.vectors);
  const auto cov = resources::coverage_report(corpus(), *L.vectors);
  L.coverage["vectors"] = {{"found", cov.found}, {"total", cov.total}, {"fraction", cov.fraction}};
  return &*L.vectors;
}

const resources::VectorStore& Pipeline::vectors(const std::string& needed_by) {
  const auto* v = vectors_if_configured();
  if (v == nullptr) throw ConfigError(needed_by + " requires a word vector store (resources.vectors)");
  return *v;
}

const resources::LabelSet& Pipeline::labels() {
  auto& L = *loaded_;
  if (L.labels) return *L.labels;
  if (cfg_.labels) {
    L.labels = resources::LabelSet::load_dir(resolve(cfg_, *cfg_.labels));
    record_input("labels", *cfg_.labels);
  } else {
    warn(diag_, "no label directory configured; using the built-in placeholder label lists");
    L.labels = resources::LabelSet::placeholder_german();
  }
  return *L.labels;
}

const resources::NormsLexicon* Pipeline::norms() {
  auto& L = *loaded_;
  if (L.norms) return &*L.norms;
  if (!cfg_.norms) return nullptr;
  L.norms = resources::NormsLexicon::load(resolve(cfg_, *cfg_.norms), cfg_.case_fold, diag_);
  record_input("norms", *cfg_.norms);
  const auto cov = resources::coverage_report(corpus(), *L.norms);
  L.coverage["norms"] = {{"found", cov.found}, {"total", cov.total}, {"fraction", cov.fraction}};
  return &*L.norms;
}

const resources::SentenceEmbeddingSet* Pipeline::sentence_embeddings() {
  auto& L = *loaded_;
  if (L.embeddings) return &*L.embeddings;
  if (!cfg_.sentence_embeddings) return nullptr;
  std::vector<std::string> ids;
  for (const auto& d : corpus()) ids.push_back(d.id);
  L.embeddings = resources::import_sentence_embeddings(resolve(cfg_, *cfg_.sentence_embeddings), &ids, diag_);
  record_input("sentence_embeddings", *cfg_.sentence_embeddings);
  L.coverage["sentence_embeddings"] = {{"fraction", L.embeddings->coverage(corpus())}};
  return &*L.embeddings;
}

const similarity::StopWords* Pipeline::stop_words() {
  auto& L = *loaded_;
  if (L.stop_words) return &*L.stop_words;
  if (!cfg_.stop_words) return nullptr;
  const auto words = resources::load_word_list(resolve(cfg_, *cfg_.stop_words));
  similarity::StopWords sw;
  for (const auto& w : words) sw.insert(text::to_lower_utf8(w));
  L.stop_words = std::move(sw);
  record_input("stop_words", *cfg_.stop_words);
  return &*L.stop_words;
}

const features::FeatureMatrix& Pipeline::feature_matrix() {
  auto& L = *loaded_;
  if (L.features) return *L.features;
  features::FeatureResources res;
  res.vectors = vectors_if_configured();
  res.labels = &labels();
  res.norms = norms();
  res.sentence_embeddings = sentence_embeddings();
  if (cfg_.reference_vocabulary) {
    L.reference = features::ReferenceVocabulary(resources::load_word_list(resolve(cfg_, *cfg_.reference_vocabulary)));
    record_input("reference_vocabulary", *cfg_.reference_vocabulary);
    res.reference = &*L.reference;
  }
  features::FeatureOptions opts;
  opts.pnr_mode = cfg_.pnr_mode;
  opts.odc_reference_size = cfg_.odc_reference_size;
  opts.extra_feature = cfg_.extra_feature;
  opts.disabled = cfg_.disabled_features;
  opts.threads = cfg_.threads;
  L.features = features::build_feature_matrix(corpus(), res, opts, diag_);
  return *L.features;
}

std::string Pipeline::csv_header() const {
  return "# config_sha256=" + hash_ + " seed=" + std::to_string(cfg_.seed) + "\n";
}

json Pipeline::meta() const {
  return {{"config_sha256", hash_}, {"seed", cfg_.seed}, {"version", CORPUSLENS_VERSION}};
}

std::string Pipeline::svg_comment() const { return "config_sha256=" + hash_ + " seed=" + std::to_string(cfg_.seed); }

std::string Pipeline::dump(json j) const {
  j["meta"] = meta();
  return j.dump(2) + "\n";
}

namespace {

std::vector<std::vector<double>> rows_of(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(m(i, j));
  return out;
}

}  // namespace

StageResult Pipeline::stats() {
  StageResult r{"stats", {}, false};
  std::ostringstream out;
  out << csv_header() << "doc_id,n_sentences,n_words,mean_word_syllables,mean_sentence_words,reading_time_hours\n";
  std::vector<std::string> ids;
  svg::Series words{"words", {}}, sentences{"sentences", {}};
  std::size_t total_words = 0, total_sentences = 0;
  for (const auto& d : corpus()) {
    const auto s = corpus::global_stats(d);
    out << csv::escape(s.id) << ',' << s.n_sentences << ',' << s.n_words << ',' << csv::number(s.mean_word_syllables)
        << ',' << csv::number(s.mean_sentence_words) << ','
        << csv::number(corpus::reading_time_hours(s.n_words, cfg_.words_per_minute)) << '\n';
    ids.push_back(s.id);
    words.values.push_back(static_cast<double>(s.n_words));
    sentences.values.push_back(static_cast<double>(s.n_sentences));
    total_words += s.n_words;
    total_sentences += s.n_sentences;
  }
  r.files.push_back({"stats.csv", out.str()});
  json summary = {{"documents", ids.size()},
                  {"n_words", total_words},
                  {"n_sentences", total_sentences},
                  {"words_per_minute", cfg_.words_per_minute},
                  {"reading_time_hours", corpus::reading_time_hours(total_words, cfg_.words_per_minute)}};
  r.files.push_back({"stats.json", dump(summary)});
  if (!cfg_.data_only)
    r.files.push_back({"stats.svg", svg::bar_chart("Words and sentences per document", ids, {words, sentences},
                                                   svg_comment())});
  return r;
}

StageResult Pipeline::topics() {
  StageResult r{"topics", {}, false};
  topics::LdaOptions opts;
  opts.topics = cfg_.topics;
  opts.alpha = cfg_.lda_alpha;
  opts.beta = cfg_.lda_beta;
  opts.iterations = cfg_.lda_iterations;
  opts.seed = cfg_.seed;
  opts.chunk_tokens = cfg_.lda_chunk_tokens;
  const auto model = topics::fit_lda(corpus(), opts, diag_);
  r.files.push_back({"topics.json", dump(topics::to_json(model, cfg_.topic_terms, cfg_.top_topics))});
  std::ostringstream terms, docs;
  terms << csv_header();
  topics::write_terms_csv(terms, model, cfg_.topic_terms);
  docs << csv_header();
  topics::write_document_topics_csv(docs, model);
  r.files.push_back({"topic_terms.csv", terms.str()});
  r.files.push_back({"document_topics.csv", docs.str()});
  if (!cfg_.data_only) {
    std::vector<std::string> cols;
    for (std::size_t k = 0; k < model.k; ++k) cols.push_back("T" + std::to_string(k));
    r.files.push_back({"topics.svg", svg::heatmap("Topic proportions per document", model.documents, cols,
                                                  rows_of(model.document_theta), svg_comment())});
  }
  return r;
}

StageResult Pipeline::similarity() {
  StageResult r{"similarity", {}, false};
  similarity::SimilarityResources res;
  similarity::SimilarityOptions opts;
  opts.jaccard_mode = cfg_.jaccard_mode;
  opts.lsa_dims = cfg_.lsa_dims;
  opts.seed = cfg_.seed;
  opts.threads = cfg_.threads;
  opts.stop_words = stop_words();
  for (auto method : cfg_.methods) {
    if (method == similarity::Method::Centroid) res.vectors = &vectors("similarity method 'centroid'");
    if (method == similarity::Method::Fms) {
      res.sentence_embeddings = sentence_embeddings();
      if (res.sentence_embeddings == nullptr)
        throw ConfigError("similarity method 'fms' requires sentence embeddings (resources.sentence_embeddings)");
    }
    const auto m = similarity::similarity_matrix(corpus(), method, res, opts, diag_);
    const std::string base = "similarity_" + m.method;
    std::ostringstream out;
    out << csv_header();
    similarity::write_csv(out, m);
    r.files.push_back({base + ".csv", out.str()});
    r.files.push_back({base + ".json", dump(similarity::to_json(m))});
    if (!cfg_.data_only)
      r.files.push_back({base + ".svg", svg::heatmap("Document similarity (" + m.method + ")", m.ids, m.ids,
                                                     rows_of(m.scores), svg_comment())});
  }
  return r;
}

StageResult Pipeline::features() {
  StageResult r{"features", {}, false};
  const auto& m = feature_matrix();
  std::ostringstream rows, docs;
  rows << csv_header();
  features::write_csv(rows, m);
  const auto agg = features::aggregate_by_document(m);
  docs << csv_header();
  features::write_csv(docs, agg, true);
  r.files.push_back({"features.csv", rows.str()});
  r.files.push_back({"features_documents.csv", docs.str()});
  json meta_j = {{"columns", m.columns}, {"rows", m.rows()}, {"metadata", m.metadata}};
  json missing = json::object();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) n += features::is_missing(m.at(i, c)) ? 1 : 0;
    missing[m.columns[c]] = n;
  }
  meta_j["missing_counts"] = missing;
  r.files.push_back({"features_meta.json", dump(meta_j)});
  return r;
}

StageResult Pipeline::factors() {
  StageResult r{"factors", {}, false};
  const auto& m = feature_matrix();
  const auto model = factors::fit_factor_model(m, cfg_.factors, diag_);
  r.nonconverged = !model.converged;
  r.files.push_back({"factor_model.json", dump(factors::to_json(model))});
  const auto scores = factors::factor_scores(model, m);
  std::ostringstream docs, sents;
  docs << csv_header() << "doc_id";
  sents << csv_header() << "doc_id,sentence_index";
  for (const auto& f : scores.factor_names) {
    docs << ',' << csv::escape(f);
    sents << ',' << csv::escape(f);
  }
  docs << '\n';
  sents << '\n';
  for (std::size_t d = 0; d < scores.documents.size(); ++d) {
    docs << csv::escape(scores.documents[d]);
    for (Eigen::Index k = 0; k < scores.document_scores.cols(); ++k)
      docs << ',' << csv::number(scores.document_scores(static_cast<Eigen::Index>(d), k));
    docs << '\n';
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    sents << csv::escape(m.doc_ids[i]) << ',' << m.sentence_index[i];
    for (Eigen::Index k = 0; k < scores.sentence_scores.cols(); ++k)
      sents << ',' << csv::number(scores.sentence_scores(static_cast<Eigen::Index>(i), k));
    sents << '\n';
  }
  r.files.push_back({"factor_scores.csv", docs.str()});
  r.files.push_back({"factor_scores_sentences.csv", sents.str()});
  if (!cfg_.data_only) {
    std::vector<svg::Series> series;
    for (std::size_t d = 0; d < scores.documents.size(); ++d) {
      svg::Series s{scores.documents[d], {}};
      for (Eigen::Index k = 0; k < scores.document_scores.cols(); ++k)
        s.values.push_back(scores.document_scores(static_cast<Eigen::Index>(d), k));
      series.push_back(std::move(s));
    }
    r.files.push_back(
        {"factors.svg", svg::bar_chart("Mean factor scores per document", scores.factor_names, series, svg_comment())});
  }
  return r;
}

StageResult Pipeline::complexity() {
  StageResult r{"complexity", {}, false};
  const auto rep = complexity::complexity_report(corpus(), vectors("complexity"), true, cfg_.threads, diag_);
  std::ostringstream out;
  out << csv_header();
  complexity::write_csv(out, rep);
  r.files.push_back({"complexity.csv", out.str()});
  r.files.push_back({"complexity.json", dump(complexity::to_json(rep))});
  if (!cfg_.data_only) {
    std::vector<svg::PointGroup> groups;
    for (const auto& d : rep.documents) {
      svg::PointGroup g{d.id, {}, {}};
      for (Eigen::Index i = 0; i < d.coords.rows(); ++i) g.points.emplace_back(d.coords(i, 0), d.coords(i, 1));
      groups.push_back(std::move(g));
    }
    svg::PointGroup measures{"documents", {}, {}};
    for (const auto& d : rep.documents) {
      if (!d.sdw) continue;
      measures.points.emplace_back(d.itv, *d.sdw);
      measures.labels.push_back(d.id);
    }
    r.files.push_back({"complexity_chunks.svg", svg::scatter("Chunk vectors (PCA)", groups, svg_comment())});
    r.files.push_back({"complexity.svg", svg::scatter("ITV (x) against SDW (y)", {measures}, svg_comment())});
  }
  return r;
}

StageResult Pipeline::manifest(const std::vector<StageResult>& stages) {
  StageResult r{"manifest", {}, false};
  json j;
  j["version"] = CORPUSLENS_VERSION;
  j["config_sha256"] = hash_;
  j["config"] = canonical_json(cfg_);
  j["seeds"] = {{"global", cfg_.seed},
                {"lda", cfg_.seed},
                {"kmeans", "derived per document pair from the global seed"}};
  j["kernel_backend"] = std::string(kernels::backend_name(kernels::active_backend()));
  auto inputs = json::array();
  auto sorted = inputs_;
  std::sort(sorted.begin(), sorted.end(),
            [](const InputRecord& a, const InputRecord& b) { return std::tie(a.role, a.path) < std::tie(b.role, b.path); });
  sorted.erase(std::unique(sorted.begin(), sorted.end(),
                           [](const InputRecord& a, const InputRecord& b) { return a.role == b.role && a.path == b.path; }),
               sorted.end());
  for (const auto& in : sorted) inputs.push_back({{"role", in.role}, {"path", in.path}, {"sha256", in.sha256}});
  j["inputs"] = inputs;
  auto outputs = json::array();
  for (const auto& s : stages)
    for (const auto& f : s.files) outputs.push_back({{"stage", s.stage}, {"file", f.name}, {"sha256", sha256_hex(f.content)}});
  j["outputs"] = outputs;
  j["coverage"] = loaded_->coverage;
  j["warnings"] = diag_ != nullptr ? diag_->warnings() : std::vector<std::string>{};
  r.files.push_back({"manifest.json", j.dump(2) + "\n"});
  return r;
}

void Pipeline::commit(const StageResult& stage) const {
  const std::filesystem::path dir(cfg_.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ResourceError("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> tmps;
  try {
    for (const auto& f : stage.files) {
      const auto tmp = dir / ("." + f.name + ".tmp");
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      tmps.push_back(tmp);
      out << f.content;
      out.close();
      if (!out) throw ResourceError("cannot write '" + tmp.string() + "'");
    }
  } catch (...) {
    for (const auto& t : tmps) std::filesystem::remove(t, ec);
    throw;
  }
  for (std::size_t i = 0; i < stage.files.size(); ++i) {
    std::filesystem::rename(tmps[i], dir / stage.files[i].name, ec);
    if (ec) throw ResourceError("cannot rename '" + tmps[i].string() + "': " + ec.message());
  }
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Config:
    case ErrorKind::Domain:
      return 2;
    case ErrorKind::Resource:
      return 3;
    case ErrorKind::Numeric:
      return 4;
  }
  return 1;
}

int run_command(const std::string& command, const PipelineConfig& cfg, std::ostream& log) {
  Diagnostics diag;
  auto flush = [&] {
    for (const auto& w : diag.warnings()) log << "warning: " << w << '\n';
  };
  try {
    Pipeline p(cfg, &diag);
    std::vector<StageResult> done;
    auto run = [&](StageResult (Pipeline::*stage)()) {
      auto r = (p.*stage)();
      p.commit(r);
      done.push_back(std::move(r));
    };
    if (command == "stats") run(&Pipeline::stats);
    else if (command == "topics") run(&Pipeline::topics);
    else if (command == "similarity") run(&Pipeline::similarity);
    else if (command == "features") run(&Pipeline::features);
    else if (command == "factors") run(&Pipeline::factors);
    else if (command == "complexity") run(&Pipeline::complexity);
    else if (command == "report") {
      for (auto stage : {&Pipeline::stats, &Pipeline::topics, &Pipeline::similarity, &Pipeline::features,
                         &Pipeline::factors, &Pipeline::complexity})
        run(stage);
      p.commit(p.manifest(done));
    } else {
      throw ConfigError("unknown command '" + command + "'");
    }
    flush();
    for (const auto& s : done)
      if (s.nonconverged) {
        log << "error: " << s.stage << " did not converge; outputs were written\n";
        return 4;
      }
    return 0;
  } catch (const Error& e) {
    flush();
    log << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    flush();
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace corpuslens::pipeline
