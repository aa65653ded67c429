// SPDX-License-Identifier: Apache-2.0
#include <openssl/evp.h>

#include <fstream>
#include <set>

#include "corpuslens/pipeline.hpp"

namespace corpuslens::pipeline {

using nlohmann::json;

namespace {

// Reads j[key] into out when present, with a ConfigError naming the key on a
// type mismatch.
template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key) || j[key].is_null()) return;
  try {
    out = j[key].get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

template <class T>
void read(const json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key) || j[key].is_null()) return;
  T v{};
  read(j, key, v);
  out = v;
}

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError("config section '" + where + "' must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (allowed.count(k) == 0) throw ConfigError("unknown config key '" + (where.empty() ? k : where + "." + k) + "'");
}

std::size_t positive(std::size_t v, const char* what) {
  if (v == 0) throw ConfigError(std::string(what) + " must be positive");
  return v;
}

}  // namespace

PipelineConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  allow_keys(j, "", {"documents", "resources", "case_fold", "chunk_size", "words_per_minute", "topics", "factors",
                     "features", "similarity", "seed", "threads", "out", "data_only"});
  PipelineConfig c;
  c.base_dir = base_dir;
  if (j.contains("documents")) {
    if (!j["documents"].is_array()) throw ConfigError("config key 'documents' must be an array");
    for (const auto& d : j["documents"]) {
      allow_keys(d, "documents[]", {"id", "path", "tagged"});
      DocumentSpec s;
      read(d, "id", s.id);
      std::string path, tagged;
      read(d, "path", path);
      read(d, "tagged", tagged);
      if (path.empty() == tagged.empty())
        throw ConfigError("document '" + s.id + "' needs exactly one of 'path' or 'tagged'");
      s.pretagged = !tagged.empty();
      s.path = s.pretagged ? tagged : path;
      if (s.id.empty()) s.id = std::filesystem::path(s.path).stem().string();
      c.documents.push_back(std::move(s));
    }
  }
  if (j.contains("resources")) {
    const auto& r = j["resources"];
    allow_keys(r, "resources", {"vectors", "vector_format", "norms", "labels", "sentence_embeddings", "abbreviations",
                                "lexicon", "reference_vocabulary", "stop_words"});
    read(r, "vectors", c.vectors);
    std::string fmt;
    read(r, "vector_format", fmt);
    if (!fmt.empty()) {
      const auto f = resources::parse_vector_format(fmt);
      if (!f) throw ConfigError("unknown vector_format '" + fmt + "' (text-header or tsv)");
      c.vector_format = *f;
    }
    read(r, "norms", c.norms);
    read(r, "labels", c.labels);
    read(r, "sentence_embeddings", c.sentence_embeddings);
    read(r, "abbreviations", c.abbreviations);
    read(r, "lexicon", c.lexicon);
    read(r, "reference_vocabulary", c.reference_vocabulary);
    read(r, "stop_words", c.stop_words);
  }
  read(j, "case_fold", c.case_fold);
  read(j, "chunk_size", c.chunk_size);
  positive(c.chunk_size, "chunk_size");
  read(j, "words_per_minute", c.words_per_minute);
  if (!(c.words_per_minute > 0)) throw ConfigError("words_per_minute must be positive");
  if (j.contains("topics")) {
    const auto& t = j["topics"];
    allow_keys(t, "topics", {"k", "iterations", "alpha", "beta", "chunk_tokens", "top_n", "terms"});
    read(t, "k", c.topics);
    read(t, "iterations", c.lda_iterations);
    read(t, "alpha", c.lda_alpha);
    read(t, "beta", c.lda_beta);
    read(t, "chunk_tokens", c.lda_chunk_tokens);
    read(t, "top_n", c.top_topics);
    read(t, "terms", c.topic_terms);
  }
  positive(c.topics, "topics.k");
  positive(c.lda_chunk_tokens, "topics.chunk_tokens");
  if (c.lda_alpha && !(*c.lda_alpha > 0)) throw ConfigError("topics.alpha must be positive");
  if (!(c.lda_beta > 0)) throw ConfigError("topics.beta must be positive");
  if (j.contains("factors")) {
    allow_keys(j["factors"], "factors", {"k"});
    read(j["factors"], "k", c.factors);
  }
  positive(c.factors, "factors.k");
  if (j.contains("features")) {
    const auto& f = j["features"];
    allow_keys(f, "features", {"pnr", "odc_reference_size", "extra", "disabled"});
    std::string pnr;
    read(f, "pnr", pnr);
    if (pnr == "raw")
      c.pnr_mode = features::PnrMode::Raw;
    else if (!pnr.empty() && pnr != "smoothed")
      throw ConfigError("features.pnr must be 'smoothed' or 'raw'");
    read(f, "odc_reference_size", c.odc_reference_size);
    read(f, "extra", c.extra_feature);
    std::vector<std::string> disabled;
    read(f, "disabled", disabled);
    c.disabled_features.insert(disabled.begin(), disabled.end());
  }
  positive(c.odc_reference_size, "features.odc_reference_size");
  if (j.contains("similarity")) {
    const auto& s = j["similarity"];
    allow_keys(s, "similarity", {"methods", "jaccard_mode", "lsa_dims"});
    std::vector<std::string> methods;
    read(s, "methods", methods);
    if (s.contains("methods")) {
      c.methods.clear();
      for (const auto& m : methods) {
        const auto parsed = similarity::parse_method(m);
        if (!parsed) throw ConfigError("unknown similarity method '" + m + "'");
        c.methods.push_back(*parsed);
      }
    }
    std::string mode;
    read(s, "jaccard_mode", mode);
    if (mode == "bag")
      c.jaccard_mode = similarity::JaccardMode::Bag;
    else if (!mode.empty() && mode != "set")
      throw ConfigError("similarity.jaccard_mode must be 'set' or 'bag'");
    read(s, "lsa_dims", c.lsa_dims);
  }
  positive(c.lsa_dims, "similarity.lsa_dims");
  read(j, "seed", c.seed);
  read(j, "threads", c.threads);
  read(j, "out", c.out);
  read(j, "data_only", c.data_only);
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

json canonical_json(const PipelineConfig& c) {
  json j;
  auto docs = json::array();
  for (const auto& d : c.documents) docs.push_back({{"id", d.id}, {d.pretagged ? "tagged" : "path", d.path}});
  j["documents"] = docs;
  json r = json::object();
  auto opt = [&](const char* key, const std::optional<std::string>& v) {
    if (v) r[key] = *v;
  };
  opt("vectors", c.vectors);
  r["vector_format"] = c.vector_format == resources::VectorFormat::Tsv ? "tsv" : "text-header";
  opt("norms", c.norms);
  opt("labels", c.labels);
  opt("sentence_embeddings", c.sentence_embeddings);
  opt("abbreviations", c.abbreviations);
  opt("lexicon", c.lexicon);
  opt("reference_vocabulary", c.reference_vocabulary);
  opt("stop_words", c.stop_words);
  j["resources"] = r;
  j["case_fold"] = c.case_fold;
  j["chunk_size"] = c.chunk_size;
  j["words_per_minute"] = c.words_per_minute;
  j["topics"] = {{"k", c.topics},
                 {"iterations", c.lda_iterations},
                 {"alpha", c.lda_alpha ? json(*c.lda_alpha) : json()},
                 {"beta", c.lda_beta},
                 {"chunk_tokens", c.lda_chunk_tokens},
                 {"top_n", c.top_topics},
                 {"terms", c.topic_terms}};
  j["factors"] = {{"k", c.factors}};
  j["features"] = {{"pnr", c.pnr_mode == features::PnrMode::Raw ? "raw" : "smoothed"},
                   {"odc_reference_size", c.odc_reference_size},
                   {"extra", c.extra_feature},
                   {"disabled", std::vector<std::string>(c.disabled_features.begin(), c.disabled_features.end())}};
  std::vector<std::string> methods;
  for (auto m : c.methods) methods.push_back(similarity::method_name(m));
  j["similarity"] = {{"methods", methods},
                     {"jaccard_mode", c.jaccard_mode == similarity::JaccardMode::Bag ? "bag" : "set"},
                     {"lsa_dims", c.lsa_dims}};
  j["seed"] = c.seed;
  return j;
}

std::string config_hash(const PipelineConfig& c) { return sha256_hex(canonical_json(c).dump()); }

std::filesystem::path resolve(const PipelineConfig& c, const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() || c.base_dir.empty() ? p : c.base_dir / p;
}

void validate(const PipelineConfig& c) {
  if (c.documents.empty()) throw ConfigError("no documents configured");
  std::set<std::string> ids;
  for (const auto& d : c.documents) {
    if (d.id.empty()) throw ConfigError("document id must not be empty");
    if (!ids.insert(d.id).second) throw ConfigError("duplicate document id '" + d.id + "'");
    if (!std::filesystem::is_regular_file(resolve(c, d.path)))
      throw ConfigError("document '" + d.id + "': file '" + d.path + "' not found");
  }
  auto check = [&](const char* what, const std::optional<std::string>& p, bool dir) {
    if (!p) return;
    const auto r = resolve(c, *p);
    if (dir ? !std::filesystem::is_directory(r) : !std::filesystem::is_regular_file(r))
      throw ConfigError(std::string(what) + " '" + *p + "' not found");
  };
  check("vectors", c.vectors, false);
  check("norms", c.norms, false);
  check("labels directory", c.labels, true);
  check("sentence_embeddings", c.sentence_embeddings, false);
  check("abbreviations", c.abbreviations, false);
  check("lexicon", c.lexicon, false);
  check("reference_vocabulary", c.reference_vocabulary, false);
  check("stop_words", c.stop_words, false);
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw ResourceError("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(corpus::read_file(path)); }

}  // namespace corpuslens::pipeline
